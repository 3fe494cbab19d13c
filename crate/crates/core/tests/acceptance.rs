//! End-to-end acceptance criteria. Each criterion prints one line; the test
//! fails if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use exact::{rat, Rational};
use klein_cert::congruence::{
    census_relators, epimorphism_census, reduce_generators, reference_reductions, residue_hom,
    shephard_todd_relators, transposition_identities, two_splitting_identity, CayleyTable,
    FiniteMatrixGroup,
};
use klein_cert::invariants::{
    build_invariants_with, discriminant_expression, verify_invariance, DELTA_DEN_CLASSICAL,
    PRINTED_DISCRIMINANT,
};
use klein_cert::klein::{generate_group, KleinAnalysis};
use klein_cert::orbifold::{
    bmy_check, c1_squared, chi_orb, literal_ab, log_discrepancies, nef_ample_certificate, SingClass,
    Weight, SPORADIC_P,
};
use klein_cert::presentations::{group_order, Presentation, DEFAULT_MAX_COSETS};
use klein_cert::report::{local_order, run_checks, Status};
use klein_cert::sporadic::{
    build_sporadic, hermitian_signature, naruki_witness, preserves_form, reference_infinity,
    verify_sporadic_relations,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fin(v: u32) -> Weight {
    Weight::Finite(v)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, format!("took {:?}, limit {:?}", t.elapsed(), limit))
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn group_structure() -> Outcome {
    let t = Instant::now();
    let g = generate_group().map_err(e)?;
    ensure(g.order_tj == 21, format!("|<T,J>| = {}", g.order_tj))?;
    ensure(g.elements.len() == 168, format!("|<T,J,R>| = {}", g.elements.len()))?;
    ensure(g.extended.len() == 336, format!("|<T,J,R,-I>| = {}", g.extended.len()))?;
    let minus = g.gens.t.identity_like().neg();
    ensure(!g.elements.contains(&minus) && g.extended.contains(&minus), "-I placement")?;
    within(t, Duration::from_secs(30))?;
    Ok(format!("21 / 168 / 336 in {:?}", t.elapsed()))
}

fn arrangement() -> Outcome {
    let t = Instant::now();
    let k = KleinAnalysis::compute().map_err(e)?;
    let inc = k.incidence();
    ensure(inc.mirrors == 21, format!("{} mirrors", inc.mirrors))?;
    let want: BTreeMap<usize, usize> = [(3, 28), (4, 21)].into_iter().collect();
    ensure(inc.census == want, format!("census {:?}", inc.census))?;
    ensure(k.uniform_per_mirror() == Some(10), "special points per mirror")?;
    ensure(inc.special_points == 171, format!("{} special points", inc.special_points))?;
    let mut orbits: Vec<(usize, usize)> = k.orbits.iter().map(|r| (r.size, r.stabilizer)).collect();
    orbits.sort_unstable();
    ensure(orbits == [(21, 8), (24, 7), (28, 6), (42, 4), (56, 3)], format!("orbits {orbits:?}"))?;
    let chi = k.euler().ok_or("no Euler report")?.chi_free;
    ensure(chi == rat(0, 1), format!("chi(free) = {chi}"))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("21 mirrors, 28 + 21 crossings, 171 points, chi 0 in {:?}", t.elapsed()))
}

fn invariants() -> Outcome {
    let t = Instant::now();
    let g = generate_group().map_err(e)?;
    let b = build_invariants_with(&g.elements, DELTA_DEN_CLASSICAL).map_err(e)?;
    ensure(b.degrees() == [Some(4), Some(6), Some(14), Some(21)], format!("degrees {:?}", b.degrees()))?;
    let gens = [("T", &g.gens.t), ("J", &g.gens.j), ("R", &g.gens.r)];
    for (name, pol) in [("f", &b.f), ("Delta", &b.delta), ("C", &b.c_inv), ("K", &b.k_inv)] {
        let r = verify_invariance(pol, &gens, 1).map_err(e)?;
        ensure(r.iter().all(|(_, ok)| *ok), format!("{name} not invariant: {r:?}"))?;
    }
    let minus = g.gens.t.identity_like().neg();
    let anti = verify_invariance(&b.k_inv, &[("-I", &minus)], -1).map_err(e)?;
    ensure(anti.iter().all(|(_, ok)| *ok), "K not anti-invariant under -I")?;
    let d = discriminant_expression(&b).map_err(e)?;
    let want: Vec<Rational> = PRINTED_DISCRIMINANT.iter().map(|&v| rat(v, 1)).collect();
    ensure(d.normalized == want, format!("normalized {:?}", d.normalized))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("degrees 4, 6, 14, 21; sigma = {}; discriminant matches in {:?}", d.sigma, t.elapsed()))
}

fn discrepancies() -> Outcome {
    let t = Instant::now();
    for p in SPORADIC_P {
        let d = log_discrepancies(p).map_err(e)?;
        let (class, locus): (SingClass, &[&str]) = match p {
            Weight::Finite(4) => (SingClass::LogCanonical, &["s4"]),
            Weight::Finite(6) => (SingClass::LogCanonical, &["s3"]),
            Weight::Infinite => (SingClass::LogCanonical, &["M"]),
            _ => (SingClass::LogTerminal, &[]),
        };
        ensure(d.class == class, format!("p = {p}: {}", d.class))?;
        ensure(d.non_lt_locus == locus, format!("p = {p}: locus {:?}", d.non_lt_locus))?;
        let minus_one: Vec<&str> = d.entries.iter().filter(|x| x.coeff == rat(-1, 1)).map(|x| x.locus).collect();
        let want: Vec<&str> = locus.iter().copied().filter(|l| *l != "M").collect();
        ensure(
            minus_one.iter().all(|l| want.contains(l)) && want.iter().all(|l| minus_one.contains(l)),
            format!("p = {p}: coefficients -1 at {minus_one:?}"),
        )?;
        ensure(d.entries.iter().all(|x| x.coeff >= rat(-1, 1)), format!("p = {p}: coefficient below -1"))?;
    }
    within(t, Duration::from_secs(1))?;
    Ok("log-terminal for 3, 5, 8, 12; s4 at 4, s3 at 6, M at inf".into())
}

fn chern_numbers() -> Outcome {
    let t = Instant::now();
    let c1_want = [rat(2, 21), rat(75, 224), rat(141, 280), rat(25, 42), rat(297, 448), rat(221, 336), rat(3, 7)];
    let chi_want = [rat(2, 63), rat(25, 224), rat(47, 280), rat(25, 126), rat(99, 448), rat(221, 1008), rat(1, 7)];
    let chi_free = rat(0, 1);
    for (i, p) in SPORADIC_P.into_iter().enumerate() {
        let c1 = c1_squared(p).map_err(e)?;
        ensure(c1 == c1_want[i], format!("c1^2({p}) = {c1}"))?;
        let mut lo = |k| local_order(k, p);
        let chi = chi_orb(p, &chi_free, &mut lo).map_err(e)?;
        ensure(chi == chi_want[i], format!("chi({p}) = {chi}"))?;
        ensure(c1 == rat(3, 1) * &chi, format!("BMY at {p}"))?;
        ensure(bmy_check(p, &chi_free, &mut lo).map_err(e)?.holds, format!("bmy_check at {p}"))?;
    }
    within(t, Duration::from_secs(5))?;
    Ok("seven c1^2 and chi_orb values; c1^2 = 3 chi_orb".into())
}

fn positivity() -> Outcome {
    let t = Instant::now();
    let ledger = run_checks(&["ample".into()], &[]).map_err(e)?;
    let status = |id: &str| ledger.get(id).map(|c| c.status);
    let ps = [fin(5), fin(6), fin(8), fin(12), Weight::Infinite];
    let ce = [rat(-3, 10), rat(-1, 2), rat(-3, 4), rat(-1, 1), rat(-3, 2)];
    let cf = [None, None, Some(rat(-3, 8)), Some(rat(-3, 4)), Some(rat(-2, 1))];
    let aa = [rat(103, 70), rat(59, 42), rat(37, 28), rat(26, 21), rat(15, 4)];
    let bb = [None, None, Some(rat(33, 56)), Some(rat(13, 28)), Some(rat(3, 14))];
    // Cells whose stated value differs from the displayed formula.
    let documented = ["ample.nef.pinf", "ample.ab.pinf"];
    for (i, p) in ps.into_iter().enumerate() {
        let a = nef_ample_certificate(p).map_err(e)?;
        let tok = p.id_token();
        let nef_ok = a.c_e.as_ref() == Some(&ce[i]) && a.c_f == cf[i];
        let nef_id = format!("ample.nef.{tok}");
        ensure(
            nef_ok || (documented.contains(&nef_id.as_str()) && status(&nef_id) == Some(Status::ErratumDocumented)),
            format!("nef coefficients at {p}: {:?} {:?}", a.c_e, a.c_f),
        )?;
        let (la, lb) = literal_ab(p).map_err(e)?;
        let ab_id = format!("ample.ab.{tok}");
        ensure(
            (la == aa[i] && lb == bb[i])
                || (documented.contains(&ab_id.as_str()) && status(&ab_id) == Some(Status::ErratumDocumented)),
            format!("A, B at {p}: {la} {lb:?}"),
        )?;
        let zero = rat(0, 1);
        ensure(a.dot_e.as_ref().is_some_and(|x| *x > zero), format!("(K+D).E at {p}"))?;
        ensure(a.dot_f.as_ref().is_none_or(|x| *x > zero), format!("(K+D).F at {p}"))?;
    }
    for p in SPORADIC_P {
        let a = nef_ample_certificate(p).map_err(e)?;
        let zero = rat(0, 1);
        if p.is_finite() {
            ensure(a.dot_m > zero && a.positive, format!("(K+D).M' at {p} = {}", a.dot_m))?;
        } else {
            ensure(a.dot_m == zero, format!("(K+D).M' at inf = {}", a.dot_m))?;
            ensure(status("ample.mprime.pinf") == Some(Status::ErratumDocumented), "M' at inf not documented")?;
        }
    }
    ensure(ledger.success, "ample rows contain a failure")?;
    within(t, Duration::from_secs(5))?;
    Ok("nef and A/B tables reproduced (p = inf cells documented); E, F, M' positive".into())
}

fn coset_enumeration() -> Outcome {
    let mut timings = Vec::new();
    for (n, p, want) in [(3, 2, 6), (4, 2, 8), (3, 3, 24), (4, 3, 72), (3, 4, 96), (3, 5, 600)] {
        let t = Instant::now();
        let pres = Presentation::local_group(n, p).map_err(e)?;
        let got = group_order(&pres, DEFAULT_MAX_COSETS).map_err(e)?;
        ensure(got == want, format!("|I_{n}({p})| = {got}"))?;
        within(t, Duration::from_secs(1))?;
        timings.push(format!("{want}"));
    }
    Ok(format!("orders {}", timings.join(", ")))
}

fn sporadic_relations() -> Outcome {
    let t = Instant::now();
    for p in [fin(2), fin(3), fin(4), fin(5), fin(6), fin(8), fin(12), Weight::Infinite] {
        let s = build_sporadic(p).map_err(e)?;
        if p != fin(2) {
            for c in verify_sporadic_relations(&s).map_err(e)?.iter().chain(&naruki_witness(&s).map_err(e)?) {
                ensure(c.holds, format!("p = {p}: {}", c.name))?;
            }
        }
        ensure(s.all().iter().all(|(_, g)| preserves_form(g, &s.form)), format!("form at {p}"))?;
        let sig = hermitian_signature(&s.form).map_err(e)?;
        let want = if p == fin(2) { (3, 0) } else { (2, 1) };
        ensure((sig.positive, sig.negative) == want, format!("signature {sig} at {p}"))?;
    }
    let s = build_sporadic(Weight::Infinite).map_err(e)?;
    let (r1, j, h) = reference_infinity();
    ensure(s.r[0] == r1 && s.j == j, "p = inf generators differ from the stated ones")?;
    ensure(preserves_form(&r1, &h) && preserves_form(&j, &h), "stated form not preserved")?;
    ensure(s.form.projective_ratio(&h).is_some(), "solved form not proportional to the stated one")?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("all relations, forms (2,1) and (3,0) at p = 2, in {:?}", t.elapsed()))
}

fn congruence() -> Outcome {
    let t = Instant::now();
    let mut gl3 = None;
    for (p, order, center) in [(fin(4), 168, 1), (fin(6), 336, 2), (fin(8), 168, 1), (Weight::Infinite, 168, 1)] {
        let hom = residue_hom(p).map_err(e)?;
        let r = reduce_generators(&hom, &build_sporadic(p).map_err(e)?).map_err(e)?;
        ensure(r == reference_reductions(p).map_err(e)?, format!("reductions at {p}"))?;
        let g = FiniteMatrixGroup::generate(&r).map_err(e)?;
        ensure(g.order() == order && g.center.len() == center, format!("order {} center {} at {p}", g.order(), g.center.len()))?;
        ensure(g.central_quotient_is_simple().map_err(e)? && order / center == 168, format!("quotient at {p}"))?;
        if hom.target.order() == 2 {
            ensure(transposition_identities(&r).iter().all(|c| c.holds), format!("transpositions at {p}"))?;
        } else {
            let st = shephard_todd_relators(&r);
            let seven: Vec<_> = st.iter().filter(|c| c.name != "A2^3 = I").collect();
            ensure(seven.len() == 7 && seven.iter().all(|c| c.holds), "Shephard-Todd relators")?;
        }
        if p == fin(4) {
            gl3 = Some(g);
        }
    }
    ensure(two_splitting_identity(), "(i - tau)^2 (i - tau_bar)^2 = 2i")?;
    let table = CayleyTable::new(&gl3.ok_or("no GL3(F2)")?.elements);
    let mut counts = Vec::new();
    for (p, some) in [(fin(3), false), (fin(4), true), (fin(5), false), (fin(8), true), (fin(12), false), (Weight::Infinite, true)] {
        let n = epimorphism_census(&table, &census_relators(p, true).map_err(e)?);
        ensure((n > 0) == some, format!("census at {p} = {n}"))?;
        counts.push(format!("{p}: {n}"));
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("orders and structure match; census {}", counts.join(", ")))
}

fn determinism() -> Outcome {
    let a = run_checks(&[], &[]).map_err(e)?;
    let b = run_checks(&[], &[]).map_err(e)?;
    ensure(a.to_json() == b.to_json(), "JSON ledgers differ")?;
    ensure(a.success, format!("{} failing checks", a.summary.fail))?;
    Ok(format!("{} checks, identical JSON, 0 fail", a.summary.total))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("group structure", group_structure),
        ("arrangement", arrangement),
        ("invariants", invariants),
        ("discrepancies", discrepancies),
        ("chern numbers", chern_numbers),
        ("positivity", positivity),
        ("coset enumeration", coset_enumeration),
        ("sporadic relations", sporadic_relations),
        ("congruence", congruence),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
