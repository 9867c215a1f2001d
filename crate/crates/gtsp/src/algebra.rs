//! The `2n x 2n` matrix realization of `sp(2n)`: spanning symbols
//! `F_{ij} = E_{ij} - sgn(i) sgn(j) E_{-j,-i}`, exact structure constants,
//! formal words in the enveloping algebra, and the quadratic Casimir built
//! from trace-form dual bases.
//!
//! Indices run over `{1..n, -1..-n}`. The symbols are redundant:
//! `F_{ij} = -sgn(i) sgn(j) F_{-j,-i}`, so a canonical representative is
//! fixed per pair and everything is expanded over the `2n^2 + n` canonical
//! symbols, which form a basis.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalars::{rat_int, Rational};
use crate::tableau::Weight;
use crate::{Error, Result};

/// The symbol `F_{ij}` with nonzero indices in `{-n..-1, 1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorSymbol {
    pub i: i32,
    pub j: i32,
}

impl GeneratorSymbol {
    pub fn new(i: i32, j: i32) -> Self {
        assert!(i != 0 && j != 0, "generator indices must be nonzero");
        GeneratorSymbol { i, j }
    }

    /// Parses the interchange form `F(i,j)`, e.g. `F(1,-2)`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix("F(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad generator symbol {s:?}")))?;
        let mut parts = inner.split(',');
        let i: i32 = parts
            .next()
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad generator symbol {s:?}")))?;
        let j: i32 = parts
            .next()
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad generator symbol {s:?}")))?;
        if parts.next().is_some() || i == 0 || j == 0 {
            return Err(Error::Parse(format!("bad generator symbol {s:?}")));
        }
        Ok(GeneratorSymbol { i, j })
    }

    /// Positive indices before negative ones, each block by magnitude.
    fn index_key(x: i32) -> (bool, i32) {
        (x < 0, x.abs())
    }

    fn pair_key(&self) -> ((bool, i32), (bool, i32)) {
        (Self::index_key(self.i), Self::index_key(self.j))
    }

    /// The identified partner `F_{-j,-i}`.
    pub fn partner(&self) -> GeneratorSymbol {
        GeneratorSymbol { i: -self.j, j: -self.i }
    }

    pub fn is_canonical(&self) -> bool {
        self.pair_key() <= self.partner().pair_key()
    }

    /// Canonical representative and the factor relating this symbol to it:
    /// `F_{ij} = c * F_canonical`.
    pub fn canonicalize(&self) -> (Rational, GeneratorSymbol) {
        if self.is_canonical() {
            (Rational::one(), *self)
        } else {
            (rat_int(-(sgn(self.i) * sgn(self.j)) as i64), self.partner())
        }
    }

    /// Root of `F_{ij}` as a weight, with `eps_{-k} = -eps_k`.
    pub fn root(&self, n: usize) -> Weight {
        let mut v = vec![Rational::zero(); n];
        let bump = |v: &mut Vec<Rational>, idx: i32, amt: i64| {
            let k = idx.unsigned_abs() as usize;
            let s = if idx > 0 { amt } else { -amt };
            v[k - 1] += rat_int(s);
        };
        bump(&mut v, self.i, 1);
        bump(&mut v, self.j, -1);
        Weight(v)
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{})", self.i, self.j)
    }
}

impl Serialize for GeneratorSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneratorSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GeneratorSymbol::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn sgn(i: i32) -> i32 {
    if i > 0 {
        1
    } else {
        -1
    }
}

/// All canonical symbols for rank `n`, sorted; their count is `2n^2 + n`.
pub fn canonical_symbols(n: usize) -> Vec<GeneratorSymbol> {
    let mut out = Vec::new();
    let idxs: Vec<i32> = (1..=n as i32).chain((1..=n as i32).map(|k| -k)).collect();
    for &i in &idxs {
        for &j in &idxs {
            let s = GeneratorSymbol::new(i, j);
            if s.is_canonical() {
                out.push(s);
            }
        }
    }
    out.sort();
    debug_assert_eq!(out.len(), 2 * n * n + n);
    out
}

// ---------------------------------------------------------------------------
// Dense exact matrices, only ever 2n x 2n.

pub type Matrix = Vec<Vec<Rational>>;

fn slot(idx: i32, n: usize) -> usize {
    if idx > 0 {
        idx as usize - 1
    } else {
        n + (-idx) as usize - 1
    }
}

pub fn zero_matrix(n: usize) -> Matrix {
    vec![vec![Rational::zero(); 2 * n]; 2 * n]
}

/// The matrix of `F_{ij}`.
pub fn symbol_matrix(sym: &GeneratorSymbol, n: usize) -> Matrix {
    let mut m = zero_matrix(n);
    m[slot(sym.i, n)][slot(sym.j, n)] += rat_int(1);
    m[slot(-sym.j, n)][slot(-sym.i, n)] -= rat_int((sgn(sym.i) * sgn(sym.j)) as i64);
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = vec![vec![Rational::zero(); d]; d];
    for r in 0..d {
        for k in 0..d {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..d {
                if !b[k][c].is_zero() {
                    out[r][c] += &a[r][k] * &b[k][c];
                }
            }
        }
    }
    out
}

pub fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn mat_scale(a: &Matrix, c: &Rational) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn mat_is_zero(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    mat_sub(&mat_mul(a, b), &mat_mul(b, a))
}

pub fn trace_of_product(a: &Matrix, b: &Matrix) -> Rational {
    let d = a.len();
    let mut t = Rational::zero();
    for r in 0..d {
        for k in 0..d {
            t += &a[r][k] * &b[k][r];
        }
    }
    t
}

/// Expands a matrix of `sp(2n)` over the canonical symbols. Fails if the
/// matrix is not in the span.
pub fn decompose(m: &Matrix, n: usize) -> Result<Vec<(Rational, GeneratorSymbol)>> {
    let mut terms = Vec::new();
    let mut recon = zero_matrix(n);
    for s in canonical_symbols(n) {
        let entry = &m[slot(s.i, n)][slot(s.j, n)];
        let c = if s.partner() == s { entry / rat_int(2) } else { entry.clone() };
        if !c.is_zero() {
            let sm = symbol_matrix(&s, n);
            recon = mat_sub(&recon, &mat_scale(&sm, &-&c));
            terms.push((c, s));
        }
    }
    if mat_sub(m, &recon).iter().any(|r| r.iter().any(|x| !x.is_zero())) {
        return Err(Error::Internal("matrix not in the span of sp(2n)".into()));
    }
    Ok(terms)
}

/// `[F_a, F_b]` expanded over canonical symbols.
pub fn structure_constants(
    a: &GeneratorSymbol,
    b: &GeneratorSymbol,
    n: usize,
) -> Result<Vec<(Rational, GeneratorSymbol)>> {
    let m = commutator(&symbol_matrix(a, n), &symbol_matrix(b, n));
    decompose(&m, n)
}

// ---------------------------------------------------------------------------
// Formal elements of the enveloping algebra: rational combinations of words.

/// A formal rational linear combination of noncommutative words in symbols.
/// Not part of the interchange surface; only named presets reach the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(Rational, Vec<GeneratorSymbol>)>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: Vec::new() }
    }

    pub fn generator(s: GeneratorSymbol) -> Self {
        AlgebraElement { terms: vec![(Rational::one(), vec![s])] }
    }

    pub fn word(c: Rational, w: Vec<GeneratorSymbol>) -> Self {
        AlgebraElement { terms: vec![(c, w)] }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        AlgebraElement { terms }
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                terms.push((a * b, w));
            }
        }
        AlgebraElement { terms }
    }

    /// `[self, other] = self other - other self`, expanded formally.
    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        self.mul(other).add(&other.mul(self).scale(&rat_int(-1)))
    }
}

/// Exact inverse by Gauss-Jordan elimination; the input must be square and
/// nonsingular.
fn invert(mut m: Vec<Vec<Rational>>) -> Result<Vec<Vec<Rational>>> {
    let d = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| if r == c { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for c in 0..d {
            m[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..d {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..d {
                let a = &m[col][c] * &f;
                m[r][c] -= a;
                let b = &inv[col][c] * &f;
                inv[r][c] -= b;
            }
        }
    }
    Ok(inv)
}

/// The quadratic Casimir `sum_a X_a X^a` with `{X^a}` dual to the canonical
/// symbols under the trace form `tr(XY)` of the matrix realization.
pub fn casimir_element(n: usize) -> Result<AlgebraElement> {
    let syms = canonical_symbols(n);
    let mats: Vec<Matrix> = syms.iter().map(|s| symbol_matrix(s, n)).collect();
    let d = syms.len();
    let mut gram = vec![vec![Rational::zero(); d]; d];
    for a in 0..d {
        for b in a..d {
            let t = trace_of_product(&mats[a], &mats[b]);
            gram[a][b] = t.clone();
            gram[b][a] = t;
        }
    }
    let ginv = invert(gram)?;
    let mut terms = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if !ginv[a][b].is_zero() {
                terms.push((ginv[a][b].clone(), vec![syms[a], syms[b]]));
            }
        }
    }
    Ok(AlgebraElement { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(i: i32, j: i32) -> GeneratorSymbol {
        GeneratorSymbol::new(i, j)
    }

    #[test]
    fn canonical_symbol_count() {
        assert_eq!(canonical_symbols(2).len(), 10);
        assert_eq!(canonical_symbols(3).len(), 21);
        assert_eq!(canonical_symbols(4).len(), 36);
    }

    #[test]
    fn symbol_identification() {
        // F_{-1,-1} = -F_{11}.
        let (c, s) = f(-1, -1).canonicalize();
        assert_eq!(s, f(1, 1));
        assert_eq!(c, rat_int(-1));
        // F_{1,-1} is self-paired.
        assert!(f(1, -1).is_canonical());
        assert_eq!(f(1, -1).partner(), f(1, -1));
        // F_{2,-1} pairs with F_{1,-2}.
        let (c, s) = f(2, -1).canonicalize();
        assert_eq!(s, f(1, -2));
        assert_eq!(c, rat_int(1));
    }

    #[test]
    fn bracket_oracle_values() {
        let n = 2;
        let t = structure_constants(&f(1, -1), &f(-1, 1), n).unwrap();
        assert_eq!(t, vec![(rat_int(4), f(1, 1))]);

        let t = structure_constants(&f(1, 1), &f(2, 2), n).unwrap();
        assert!(t.is_empty());

        let t = structure_constants(&f(1, 1), &f(1, -1), n).unwrap();
        assert_eq!(t, vec![(rat_int(2), f(1, -1))]);
    }

    #[test]
    fn roots_match_cartan_brackets() {
        let n = 3;
        for s in canonical_symbols(n) {
            let root = s.root(n);
            for k in 1..=n {
                let br = structure_constants(&f(k as i32, k as i32), &s, n).unwrap();
                let expect = root.0[k - 1].clone();
                if expect.is_zero() {
                    assert!(br.is_empty());
                } else {
                    assert_eq!(br, vec![(expect, s)]);
                }
            }
        }
    }

    #[test]
    fn generator_symbol_parse_round_trip() {
        let s = f(1, -2);
        assert_eq!(GeneratorSymbol::parse("F(1,-2)").unwrap(), s);
        assert_eq!(GeneratorSymbol::parse(&s.to_string()).unwrap(), s);
        assert!(GeneratorSymbol::parse("F(0,1)").is_err());
        assert!(GeneratorSymbol::parse("E(1,2)").is_err());
    }

    #[test]
    fn casimir_is_built_from_dual_bases() {
        let omega = casimir_element(2).unwrap();
        // Every word has length 2 and the element is symmetric in the pairing.
        assert!(omega.terms.iter().all(|(_, w)| w.len() == 2));
        assert!(!omega.terms.is_empty());
    }
}
