//! Generator actions on formal linear combinations of type C tableaux.
//!
//! Four families act through closed formulas: the Cartan elements `F_{kk}`
//! act diagonally by the weight, `F_{k,-k}` and `F_{-k,k}` move the primed
//! row `k` with the `A`/`B` coefficients, and `F_{k-1,-k}` mixes rows `k-1`
//! and `k` with the `C`/`D` coefficients. Every other symbol is evaluated
//! through a bracket word in these families, found once per rank by breadth
//! first search over commutators and validated against the matrix
//! realization.
//!
//! Formulas are applied over the free span of all tableaux; emitted terms
//! whose target fails the supplied basis membership are dropped. That is the
//! projection convention under which the closed formulas define the module
//! structures realized in [`crate::modules`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    canonical_symbols, commutator, decompose, mat_is_zero, mat_scale, mat_sub, symbol_matrix,
    AlgebraElement, GeneratorSymbol, Matrix,
};
use crate::scalars::{format_rational, rat_int, Rational};
use crate::tableau::{weight_c, TableauC};
use crate::{Error, Result};

/// Membership predicate of a declared basis universe.
pub trait TableauBasis: Sync {
    fn contains(&self, t: &TableauC) -> bool;
}

/// The free span: nothing is ever dropped.
pub struct FreeBasis;

impl TableauBasis for FreeBasis {
    fn contains(&self, _t: &TableauC) -> bool {
        true
    }
}

/// A finite formal linear combination of tableaux with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableauVector {
    terms: BTreeMap<TableauC, Rational>,
}

impl TableauVector {
    pub fn zero() -> Self {
        TableauVector::default()
    }

    pub fn singleton(t: TableauC) -> Self {
        let mut v = TableauVector::zero();
        v.add_term(Rational::one(), t);
        v
    }

    pub fn add_term(&mut self, c: Rational, t: TableauC) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TableauVector) -> TableauVector {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(c.clone(), t.clone());
        }
        out
    }

    pub fn sub(&self, other: &TableauVector) -> TableauVector {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(-c, t.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> TableauVector {
        if c.is_zero() {
            return TableauVector::zero();
        }
        TableauVector {
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &TableauC) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TableauC, &Rational)> {
        self.terms.iter()
    }
}

impl Serialize for TableauVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: String,
            tableau: &'a TableauC,
        }
        let v: Vec<Term> = self
            .terms
            .iter()
            .map(|(t, c)| Term { coeff: format_rational(c), tableau: t })
            .collect();
        v.serialize(s)
    }
}

// ---------------------------------------------------------------------------
// Coefficient functions.

/// `A_{ki} = prod_{a != i} 1/(l'_{ka} - l'_{ki})`; the empty product is 1.
pub fn coeff_a(t: &TableauC, k: usize, i: usize) -> Result<Rational> {
    let mut v = Rational::one();
    for a in 1..=k {
        if a == i {
            continue;
        }
        let d = t.lp(k, a) - t.lp(k, i);
        if d.is_zero() {
            return Err(Error::NotRegular(format!("(i): l'_{{{k},{a}}} = l'_{{{k},{i}}}")));
        }
        v /= d;
    }
    Ok(v)
}

/// `B_{ki} = 2 A_{ki} (2 l'_{ki} - 1) prod_a (l_{ka} - l'_{ki}) prod_a (l_{k-1,a} - l'_{ki})`.
pub fn coeff_b(t: &TableauC, k: usize, i: usize) -> Result<Rational> {
    let mut v = coeff_a(t, k, i)? * rat_int(2) * (rat_int(2) * t.lp(k, i) - rat_int(1));
    for a in 1..=k {
        v *= t.l(k, a) - t.lp(k, i);
    }
    if k >= 2 {
        for a in 1..=k - 1 {
            v *= t.l(k - 1, a) - t.lp(k, i);
        }
    }
    Ok(v)
}

/// `C_{ki} = 1/(2 l_{k-1,i} - 1) prod_{a != i} 1/((l_{k-1,i} - l_{k-1,a})(l_{k-1,i} + l_{k-1,a} - 1))`.
pub fn coeff_c(t: &TableauC, k: usize, i: usize) -> Result<Rational> {
    let d0 = rat_int(2) * t.l(k - 1, i) - rat_int(1);
    if d0.is_zero() {
        return Err(Error::NotRegular(format!("(iv): 2 l_{{{},{i}}} = 1", k - 1)));
    }
    let mut v = d0.recip();
    for a in 1..=k - 1 {
        if a == i {
            continue;
        }
        let d1 = t.l(k - 1, i) - t.l(k - 1, a);
        if d1.is_zero() {
            return Err(Error::NotRegular(format!(
                "(ii): l_{{{0},{i}}} = l_{{{0},{a}}}",
                k - 1
            )));
        }
        let d2 = t.l(k - 1, i) + t.l(k - 1, a) - rat_int(1);
        if d2.is_zero() {
            return Err(Error::NotRegular(format!(
                "(iii): l_{{{0},{i}}} + l_{{{0},{a}}} = 1",
                k - 1
            )));
        }
        v /= d1 * d2;
    }
    Ok(v)
}

/// `D_{kijm} = A_{ki} A_{k-1,m} C_{kj} prod_{a != i} (l_{k-1,j}^2 - l'^2_{ka})
///  prod_{a != m} (l_{k-1,j}^2 - l'^2_{k-1,a})`.
pub fn coeff_d(t: &TableauC, k: usize, i: usize, j: usize, m: usize) -> Result<Rational> {
    let mut v = coeff_a(t, k, i)? * coeff_a(t, k - 1, m)? * coeff_c(t, k, j)?;
    let lsq = t.l(k - 1, j) * t.l(k - 1, j);
    for a in 1..=k {
        if a != i {
            v *= &lsq - t.lp(k, a) * t.lp(k, a);
        }
    }
    for a in 1..=k - 1 {
        if a != m {
            v *= &lsq - t.lp(k - 1, a) * t.lp(k - 1, a);
        }
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// The four directly implemented families.

/// A generator with a closed-formula action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    /// `F_{kk}`: multiplication by the k-th weight coordinate.
    Cartan(usize),
    /// `F_{k,-k}`: raises one primed entry in row `k` with coefficient `A_{ki}`.
    Raise(usize),
    /// `F_{-k,k}`: lowers one primed entry in row `k` with coefficient `B_{ki}`.
    Lower(usize),
    /// `F_{k-1,-k}` for `k >= 2`: the `C`/`D` two-row formula.
    Mixed(usize),
}

impl Atom {
    pub fn symbol(&self) -> GeneratorSymbol {
        match *self {
            Atom::Cartan(k) => GeneratorSymbol::new(k as i32, k as i32),
            Atom::Raise(k) => GeneratorSymbol::new(k as i32, -(k as i32)),
            Atom::Lower(k) => GeneratorSymbol::new(-(k as i32), k as i32),
            Atom::Mixed(k) => GeneratorSymbol::new(k as i32 - 1, -(k as i32)),
        }
    }
}

/// Applies one atom to a single tableau, accumulating `scale * result`.
fn act_atom(
    atom: &Atom,
    t: &TableauC,
    scale: &Rational,
    basis: &dyn TableauBasis,
    out: &mut TableauVector,
) -> Result<()> {
    match *atom {
        Atom::Cartan(k) => {
            let w = weight_c(t).0[k - 1].clone();
            out.add_term(scale * w, t.clone());
        }
        Atom::Raise(k) => {
            for i in 1..=k {
                let c = coeff_a(t, k, i)?;
                if c.is_zero() {
                    continue;
                }
                let target = t.with_delta(k, i, true, 1);
                if basis.contains(&target) {
                    out.add_term(scale * c, target);
                }
            }
        }
        Atom::Lower(k) => {
            for i in 1..=k {
                let c = coeff_b(t, k, i)?;
                if c.is_zero() {
                    continue;
                }
                let target = t.with_delta(k, i, true, -1);
                if basis.contains(&target) {
                    out.add_term(scale * c, target);
                }
            }
        }
        Atom::Mixed(k) => {
            for i in 1..=k - 1 {
                let c = coeff_c(t, k, i)?;
                if c.is_zero() {
                    continue;
                }
                let target = t.with_delta(k - 1, i, false, -1);
                if basis.contains(&target) {
                    out.add_term(scale * c, target);
                }
            }
            let a_k: Vec<Rational> = (1..=k).map(|i| coeff_a(t, k, i)).collect::<Result<_>>()?;
            let a_km: Vec<Rational> =
                (1..=k - 1).map(|m| coeff_a(t, k - 1, m)).collect::<Result<_>>()?;
            let c_k: Vec<Rational> = (1..=k - 1).map(|j| coeff_c(t, k, j)).collect::<Result<_>>()?;
            let lpsq_k: Vec<Rational> = (1..=k).map(|a| t.lp(k, a) * t.lp(k, a)).collect();
            let lpsq_km: Vec<Rational> =
                (1..=k - 1).map(|a| t.lp(k - 1, a) * t.lp(k - 1, a)).collect();
            for j in 1..=k - 1 {
                let lsq = t.l(k - 1, j) * t.l(k - 1, j);
                for i in 1..=k {
                    let mut p1 = &a_k[i - 1] * &c_k[j - 1];
                    for a in 1..=k {
                        if a != i {
                            p1 *= &lsq - &lpsq_k[a - 1];
                        }
                    }
                    if p1.is_zero() {
                        continue;
                    }
                    for m in 1..=k - 1 {
                        let mut c = &p1 * &a_km[m - 1];
                        for a in 1..=k - 1 {
                            if a != m {
                                c *= &lsq - &lpsq_km[a - 1];
                            }
                        }
                        if c.is_zero() {
                            continue;
                        }
                        let target = t
                            .with_delta(k, i, true, 1)
                            .with_delta(k - 1, j, false, 1)
                            .with_delta(k - 1, m, true, 1);
                        if basis.contains(&target) {
                            out.add_term(scale * c, target);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Bracket words over the atoms.

/// A fixed evaluation recipe for one symbol.
#[derive(Debug, Clone)]
pub enum OpExpr {
    Atom(Atom),
    Bracket(Box<OpExpr>, Box<OpExpr>),
    Scaled(Rational, Box<OpExpr>),
}

fn expr_matrix(expr: &OpExpr, n: usize) -> Matrix {
    match expr {
        OpExpr::Atom(a) => symbol_matrix(&a.symbol(), n),
        OpExpr::Bracket(x, y) => commutator(&expr_matrix(x, n), &expr_matrix(y, n)),
        OpExpr::Scaled(c, x) => mat_scale(&expr_matrix(x, n), c),
    }
}

/// Per-rank evaluation table: every canonical symbol resolved to a bracket
/// word in the four atom families, plus the Casimir element.
pub struct ActionTable {
    n: usize,
    exprs: BTreeMap<GeneratorSymbol, OpExpr>,
    casimir: AlgebraElement,
}

impl ActionTable {
    pub fn new(n: usize) -> Result<Self> {
        let mut atoms: Vec<Atom> = Vec::new();
        for k in 1..=n {
            atoms.push(Atom::Cartan(k));
            atoms.push(Atom::Raise(k));
            atoms.push(Atom::Lower(k));
        }
        for k in 2..=n {
            atoms.push(Atom::Mixed(k));
        }

        let mut exprs: BTreeMap<GeneratorSymbol, OpExpr> = BTreeMap::new();
        for a in atoms {
            let sym = a.symbol();
            debug_assert!(sym.is_canonical());
            exprs.insert(sym, OpExpr::Atom(a));
        }

        let all = canonical_symbols(n);
        loop {
            let mut progress = false;
            let known: Vec<GeneratorSymbol> = exprs.keys().cloned().collect();
            for s1 in &known {
                for s2 in &known {
                    if s1 == s2 {
                        continue;
                    }
                    let m = commutator(&symbol_matrix(s1, n), &symbol_matrix(s2, n));
                    if mat_is_zero(&m) {
                        continue;
                    }
                    let terms = decompose(&m, n)?;
                    if terms.len() != 1 {
                        continue;
                    }
                    let (c, target) = &terms[0];
                    if exprs.contains_key(target) {
                        continue;
                    }
                    let word = OpExpr::Bracket(
                        Box::new(exprs[s1].clone()),
                        Box::new(exprs[s2].clone()),
                    );
                    exprs.insert(*target, OpExpr::Scaled(c.recip(), Box::new(word)));
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }

        for s in &all {
            let expr = exprs
                .get(s)
                .ok_or_else(|| Error::Internal(format!("no bracket word found for {s}")))?;
            let m = expr_matrix(expr, n);
            if !mat_is_zero(&mat_sub(&m, &symbol_matrix(s, n))) {
                return Err(Error::Internal(format!("bracket word for {s} is wrong")));
            }
        }

        let casimir = crate::algebra::casimir_element(n)?;
        Ok(ActionTable { n, exprs, casimir })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn casimir(&self) -> &AlgebraElement {
        &self.casimir
    }

    /// The bracket word evaluating a canonical symbol.
    pub fn expr(&self, sym: &GeneratorSymbol) -> Option<&OpExpr> {
        self.exprs.get(sym)
    }

    fn eval(&self, expr: &OpExpr, v: &TableauVector, basis: &dyn TableauBasis) -> Result<TableauVector> {
        match expr {
            OpExpr::Atom(a) => {
                let mut out = TableauVector::zero();
                for (t, c) in v.iter() {
                    act_atom(a, t, c, basis, &mut out)?;
                }
                Ok(out)
            }
            OpExpr::Bracket(x, y) => {
                let xy = self.eval(x, &self.eval(y, v, basis)?, basis)?;
                let yx = self.eval(y, &self.eval(x, v, basis)?, basis)?;
                Ok(xy.sub(&yx))
            }
            OpExpr::Scaled(c, x) => Ok(self.eval(x, v, basis)?.scaled(c)),
        }
    }

    /// Applies one symbol, linearly extended over the vector.
    pub fn act_symbol(
        &self,
        sym: &GeneratorSymbol,
        v: &TableauVector,
        basis: &dyn TableauBasis,
    ) -> Result<TableauVector> {
        let (c, canon) = sym.canonicalize();
        let expr = self
            .exprs
            .get(&canon)
            .ok_or_else(|| Error::BadIndex(format!("symbol {sym} out of range for rank {}", self.n)))?;
        Ok(self.eval(expr, v, basis)?.scaled(&c))
    }

    /// Applies one symbol to a basis member; the membership is checked.
    pub fn act_tableau(
        &self,
        sym: &GeneratorSymbol,
        t: &TableauC,
        basis: &dyn TableauBasis,
    ) -> Result<TableauVector> {
        if !basis.contains(t) {
            return Err(Error::NotMember(format!("input of {sym}")));
        }
        self.act_symbol(sym, &TableauVector::singleton(t.clone()), basis)
    }

    /// Applies a formal element, words composing right to left.
    pub fn act_element(
        &self,
        e: &AlgebraElement,
        v: &TableauVector,
        basis: &dyn TableauBasis,
    ) -> Result<TableauVector> {
        let mut out = TableauVector::zero();
        for (c, word) in &e.terms {
            let mut w = v.clone();
            for sym in word.iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = self.act_symbol(sym, &w, basis)?;
            }
            out = out.add(&w.scaled(c));
        }
        Ok(out)
    }

    /// `act([a,b]) - act(sum of structure constants)` on one tableau; the
    /// zero vector exactly when the defining relation holds there.
    pub fn relation_defect(
        &self,
        a: &GeneratorSymbol,
        b: &GeneratorSymbol,
        t: &TableauC,
        basis: &dyn TableauBasis,
    ) -> Result<TableauVector> {
        let v = TableauVector::singleton(t.clone());
        let lhs = self.act_element(
            &AlgebraElement::generator(*a).bracket(&AlgebraElement::generator(*b)),
            &v,
            basis,
        )?;
        let mut rhs = TableauVector::zero();
        for (c, s) in crate::algebra::structure_constants(a, b, self.n)? {
            rhs = rhs.add(&self.act_symbol(&s, &v, basis)?.scaled(&c));
        }
        Ok(lhs.sub(&rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn trivial_tableau() -> TableauC {
        TableauC::new(
            2,
            vec![vec![rat(-1, 2)], vec![rat(-1, 2), rat(-3, 2)]],
            vec![vec![rat(-1, 2)], vec![rat(-1, 2), rat(-3, 2)]],
        )
        .unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let t = trivial_tableau();
        assert_eq!(coeff_a(&t, 1, 1).unwrap(), rat_int(1));
        assert_eq!(coeff_b(&t, 1, 1).unwrap(), rat_int(0));
        // C_{21} = 1/(2 l_{11} - 1): both side products are empty.
        assert_eq!(coeff_c(&t, 2, 1).unwrap(), rat(-1, 2));
    }

    #[test]
    fn coefficient_regularity_errors_are_named() {
        let t = TableauC::new(
            2,
            vec![vec![rat(-1, 2)], vec![rat(-1, 2), rat(-3, 2)]],
            vec![vec![rat(-1, 2)], vec![rat(-1, 2), rat(-1, 2)]],
        )
        .unwrap();
        match coeff_a(&t, 2, 1) {
            Err(Error::NotRegular(msg)) => assert!(msg.starts_with("(i)")),
            other => panic!("expected a named regularity error, got {other:?}"),
        }
    }

    #[test]
    fn operator_table_covers_all_symbols() {
        for n in [2usize, 3] {
            let table = ActionTable::new(n).unwrap();
            assert_eq!(table.exprs.len(), 2 * n * n + n);
        }
    }

    #[test]
    fn representation_property_on_small_finite_modules() {
        use crate::enumeration::{enumerate_c_standard, DominantWeight, Series};
        use crate::modules::ModuleSpec;
        use crate::tableau::Weight;
        let table = ActionTable::new(2).unwrap();
        let syms = canonical_symbols(2);
        for entries in [[0i64, 0], [0, -1]] {
            let lam = DominantWeight::new(
                Series::C,
                Weight(entries.iter().map(|&x| rat_int(x)).collect()),
            )
            .unwrap();
            let basis = enumerate_c_standard(&lam).unwrap();
            let spec = ModuleSpec::finite_c(lam).unwrap();
            for (ai, a) in syms.iter().enumerate() {
                for b in &syms[ai + 1..] {
                    for t in &basis {
                        let defect = table.relation_defect(a, b, t, &spec).unwrap();
                        assert!(
                            defect.is_zero(),
                            "[{a},{b}] fails on a basis tableau of {entries:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn casimir_acts_by_a_scalar_on_a_finite_module() {
        use crate::enumeration::{enumerate_c_standard, DominantWeight, Series};
        use crate::modules::ModuleSpec;
        use crate::tableau::Weight;
        let table = ActionTable::new(2).unwrap();
        let lam = DominantWeight::new(Series::C, Weight(vec![rat_int(0), rat_int(-1)])).unwrap();
        let basis = enumerate_c_standard(&lam).unwrap();
        let spec = ModuleSpec::finite_c(lam).unwrap();
        // Trace-form normalization: the scalar is sum(lambda_i^2 + 2 rho_i lambda_i)/2.
        let expected = rat(5, 2);
        for t in &basis {
            let out = table
                .act_element(table.casimir(), &TableauVector::singleton(t.clone()), &spec)
                .unwrap();
            assert_eq!(out.len(), 1);
            assert_eq!(out.coeff(t), expected);
        }
    }

    #[test]
    fn vector_arithmetic_prunes_zeros() {
        let t = trivial_tableau();
        let v = TableauVector::singleton(t.clone());
        let w = v.sub(&v);
        assert!(w.is_zero());
        let mut u = TableauVector::zero();
        u.add_term(rat(1, 2), t.clone());
        u.add_term(rat(-1, 2), t);
        assert!(u.is_zero());
    }
}
