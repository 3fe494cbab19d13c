//! Free-group words, finite presentations and Todd-Coxeter coset
//! enumeration over the trivial subgroup.

use std::collections::VecDeque;
use std::fmt;

use exact::{Matrix, Scalar};

use crate::error::{CertError, Result};

/// Generator `k` (0-based) is the letter `k + 1`, its inverse `-(k + 1)`.
pub type Letter = i32;

pub fn gen(k: usize) -> Letter {
    k as Letter + 1
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(k: usize) -> Self {
        Word(vec![gen(k)])
    }

    fn push(&mut self, l: Letter) {
        assert!(l != 0, "letter 0 is not a generator");
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut w = self.clone();
        for &l in &rhs.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Image under `gen k -> images[k]`.
    pub fn eval<S: Scalar>(&self, images: &[Matrix<S>], inverses: &[Matrix<S>]) -> Matrix<S> {
        let id = images[0].identity_like();
        self.0.iter().fold(id, |acc, &l| {
            let k = l.unsigned_abs() as usize - 1;
            acc.mul(if l > 0 { &images[k] } else { &inverses[k] })
        })
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = &names[l.unsigned_abs() as usize - 1];
            let e = (j - i) as i64 * l.signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_generator();
        let names: Vec<String> = (0..n).map(|k| format!("g{}", k + 1)).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Alternating product `x y x ...` with `n` factors.
pub fn alternating(n: usize, x: &Word, y: &Word) -> Word {
    (0..n).fold(Word::identity(), |acc, i| acc.mul(if i % 2 == 0 { x } else { y }))
}

/// `(xy)^{n/2} ((yx)^{n/2})^{-1}`.
pub fn braid_relator(n: usize, x: &Word, y: &Word) -> Result<Word> {
    if n < 2 {
        return Err(CertError::BraidLength(n));
    }
    Ok(alternating(n, x, y).mul(&alternating(n, y, x).inverse()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let n = generators.len();
        if let Some(r) = relators.iter().find(|r| r.max_generator() > n) {
            return Err(CertError::Structure(format!("relator {r} uses an undeclared generator")));
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    /// `<a, b | a^p, b^p, br_n(a, b)>`.
    pub fn local_group(n: usize, p: u32) -> Result<Self> {
        let (a, b) = (Word::generator(0), Word::generator(1));
        Presentation::new(
            vec!["a".into(), "b".into()],
            vec![a.pow(p as i64), b.pow(p as i64), braid_relator(n, &a, &b)?],
        )
    }

    /// `<alpha, delta | (alpha delta)^7, br_3(alpha, delta^2),
    /// br_4(alpha, delta^-1 alpha delta)>`, with `alpha^p` when `p` is given.
    pub fn klein_complement(p: Option<u32>) -> Result<Self> {
        let (a, d) = (Word::generator(0), Word::generator(1));
        let mut rels = vec![
            a.mul(&d).pow(7),
            braid_relator(3, &a, &d.pow(2))?,
            braid_relator(4, &a, &d.inverse().mul(&a).mul(&d))?,
        ];
        if let Some(p) = p {
            rels.push(a.pow(p as i64));
        }
        Presentation::new(vec!["alpha".into(), "delta".into()], rels)
    }

    /// Parses the text format: a `gens a b ...` line, then one relator per
    /// line. Relators are products of `x`, `x^k`, `(...)^k` and
    /// `br(n, u, v)`; `lhs = rhs` stands for `lhs rhs^-1`; `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CertError::Presentation { line: line_no, msg };
            if let Some(rest) = line.strip_prefix("gens") {
                if generators.is_some() {
                    return Err(err("duplicate gens line".into()));
                }
                let names: Vec<String> = rest
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
                if names.is_empty() {
                    return Err(err("no generators declared".into()));
                }
                if let Some(bad) = names.iter().find(|s| !is_ident(s)) {
                    return Err(err(format!("invalid generator name {bad:?}")));
                }
                generators = Some(names);
                continue;
            }
            let gens = generators
                .as_ref()
                .ok_or_else(|| err("relator before gens line".into()))?;
            let word = match line.split_once('=') {
                Some((l, r)) => {
                    let l = Parser::run(l, gens).map_err(&err)?;
                    let r = Parser::run(r, gens).map_err(&err)?;
                    l.mul(&r.inverse())
                }
                None => Parser::run(line, gens).map_err(&err)?,
            };
            relators.push(word);
        }
        let gens = generators.ok_or(CertError::Presentation { line: 0, msg: "missing gens line".into() })?;
        Presentation::new(gens, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.display_with(&self.generators)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "br"
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    gens: &'a [String],
}

impl<'a> Parser<'a> {
    fn run(s: &'a str, gens: &'a [String]) -> std::result::Result<Word, String> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, gens };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(format!("unexpected {:?} at column {}", p.src[p.pos] as char, p.pos + 1));
        }
        Ok(w)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at column {}", c as char, self.pos + 1))
        }
    }

    fn product(&mut self) -> std::result::Result<Word, String> {
        let mut w = Word::identity();
        loop {
            match self.peek() {
                Some(b'*') | Some(b'.') => self.pos += 1,
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' || c == b'1' => {
                    w = w.mul(&self.factor()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Word, String> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(b')')?;
                w
            }
            Some(b'1') => {
                self.pos += 1;
                Word::identity()
            }
            _ => {
                let name = self.ident();
                if name == "br" {
                    self.expect(b'(')?;
                    let n = self.integer()?;
                    self.expect(b',')?;
                    let x = self.product()?;
                    self.expect(b',')?;
                    let y = self.product()?;
                    self.expect(b')')?;
                    let n = usize::try_from(n).map_err(|_| format!("braid length {n}"))?;
                    braid_relator(n, &x, &y).map_err(|e| e.to_string())?
                } else {
                    let k = self
                        .gens
                        .iter()
                        .position(|g| *g == name)
                        .ok_or_else(|| format!("unknown generator {name:?}"))?;
                    Word::generator(k)
                }
            }
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> std::result::Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("expected an integer at column {}", start + 1))
    }
}

/// Default coset bound for enumeration runs.
pub const DEFAULT_MAX_COSETS: usize = 200_000;

/// A complete coset table: `table[c][col]`, with column `2k` for generator
/// `k` and `2k + 1` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub table: Vec<Vec<usize>>,
    pub defined: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    fn act(&self, c: usize, l: Letter) -> usize {
        self.table[c][column(l)]
    }

    /// Every relator fixes every coset, inverse columns invert, and the
    /// action is transitive.
    pub fn audit(&self, pres: &Presentation) -> bool {
        let n = self.index();
        let relators_ok = (0..n).all(|c| {
            pres.relators
                .iter()
                .all(|r| r.letters().iter().fold(c, |x, &l| self.act(x, l)) == c)
        });
        let inverse_ok = (0..n).all(|c| {
            (0..pres.generators.len()).all(|k| {
                let g = gen(k);
                self.act(self.act(c, g), -g) == c
            })
        });
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &self.table[c] {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        relators_ok && inverse_ok && seen.into_iter().all(|s| s)
    }
}

fn column(l: Letter) -> usize {
    let k = l.unsigned_abs() as usize - 1;
    if l > 0 {
        2 * k
    } else {
        2 * k + 1
    }
}

fn inv_column(c: usize) -> usize {
    c ^ 1
}

struct Enumerator {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    cols: usize,
    bound: usize,
}

impl Enumerator {
    fn new(ngens: usize, bound: usize) -> Self {
        Enumerator {
            table: vec![vec![None; 2 * ngens]],
            parent: vec![0],
            queue: Vec::new(),
            cols: 2 * ngens,
            bound,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = c;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: usize, col: usize) -> Result<()> {
        if self.table.len() >= self.bound {
            return Err(CertError::CosetBound(self.bound));
        }
        let b = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(b);
        self.table[c][col] = Some(b);
        self.table[b][inv_column(col)] = Some(c);
        Ok(())
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let Some(d) = self.table[g][col] else { continue };
                self.table[d][inv_column(col)] = None;
                let (m, n) = (self.rep(g), self.rep(d));
                if let Some(t) = self.table[m][col] {
                    self.merge(n, t);
                } else if let Some(t) = self.table[n][inv_column(col)] {
                    self.merge(m, t);
                } else {
                    self.table[m][col] = Some(n);
                    self.table[n][inv_column(col)] = Some(m);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j {
                match self.table[f][column(w[i])] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.table[b][column(-w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = column(w[i]);
                self.table[f][col] = Some(b);
                self.table[b][inv_column(col)] = Some(f);
                return Ok(());
            }
            self.define(f, column(w[i]))?;
        }
    }

    fn compact(self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.live(c)).collect();
        let mut renum = vec![usize::MAX; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            renum[c] = i;
        }
        let table = live
            .iter()
            .map(|&c| {
                self.table[c]
                    .iter()
                    .map(|e| renum[e.expect("complete table")])
                    .collect()
            })
            .collect();
        CosetTable { table, defined: self.table.len() }
    }
}

/// Coset enumeration over the trivial subgroup (HLT strategy: every relator
/// is scanned from every live coset, gaps are filled by new definitions).
/// Returns the completed table, whose index is the group order.
pub fn todd_coxeter(pres: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    let ngens = pres.generators.len();
    if ngens == 0 {
        return Err(CertError::Structure("presentation without generators".into()));
    }
    let mut e = Enumerator::new(ngens, max_cosets);
    let mut c = 0;
    while c < e.table.len() {
        for r in &pres.relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r.letters())?;
        }
        if e.live(c) {
            for col in 0..e.cols {
                if e.table[c][col].is_none() {
                    e.define(c, col)?;
                }
            }
        }
        c += 1;
    }
    Ok(e.compact())
}

/// Order of the group presented by `pres`.
pub fn group_order(pres: &Presentation, max_cosets: usize) -> Result<usize> {
    Ok(todd_coxeter(pres, max_cosets)?.index())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([1, 2, -2, -1, 1]);
        assert_eq!(w.letters(), &[1]);
        let a = Word::generator(0);
        assert_eq!(a.pow(-3).mul(&a.pow(3)), Word::identity());
    }

    #[test]
    fn braid_relators() {
        let (a, b) = (Word::generator(0), Word::generator(1));
        assert_eq!(braid_relator(2, &a, &b).unwrap().letters(), &[1, 2, -1, -2]);
        assert_eq!(braid_relator(3, &a, &b).unwrap().letters(), &[1, 2, 1, -2, -1, -2]);
        assert!(matches!(braid_relator(1, &a, &b), Err(CertError::BraidLength(1))));
    }

    #[test]
    fn small_orders() {
        let cyclic = Presentation::parse("gens a\na^2").unwrap();
        assert_eq!(group_order(&cyclic, 100).unwrap(), 2);
        assert_eq!(group_order(&Presentation::local_group(3, 2).unwrap(), 1000).unwrap(), 6);
        assert_eq!(group_order(&Presentation::local_group(4, 2).unwrap(), 1000).unwrap(), 8);
    }

    #[test]
    fn parser() {
        let p = Presentation::parse("# test\ngens a b\na^3\nb^3\nbr(3, a, b)\n").unwrap();
        assert_eq!(p, Presentation::local_group(3, 3).unwrap());
        let q = Presentation::parse("gens a b\na^3\nb^3\na b a = b a b").unwrap();
        assert_eq!(group_order(&q, 1000).unwrap(), 24);
        assert!(matches!(
            Presentation::parse("gens a\nc^2"),
            Err(CertError::Presentation { line: 2, .. })
        ));
        assert!(Presentation::parse("a^2").is_err());
    }

    #[test]
    fn bound_is_reported() {
        let free = Presentation::parse("gens a b\n").unwrap();
        assert!(matches!(todd_coxeter(&free, 50), Err(CertError::CosetBound(50))));
    }
}
