//! Declared basis universes and their combinatorics.
//!
//! Five kinds of module are realized on tableau bases:
//! - `FiniteC`: the finite-dimensional simple `sp(2n)`-module on C-standard
//!   tableaux with a fixed top row;
//! - `GenericC`: the integer-shift family of a C-generic seed with fixed top
//!   row (the Gelfand-Graev continuation of the closed formulas);
//! - `Bounded`: the infinite-dimensional bounded module `V(mu, lambda)` whose
//!   basis splits into a D-standard part and a first primed column in
//!   `mu + Z^n`;
//! - `BoundedSubPlus`: the submodule cut out by `w'_{k1} >= 1/2` when
//!   `mu_k` is a half-odd integer;
//! - `Subquotient`: the simple section `V(mu, lambda, Sigma)`, accessed
//!   through membership-pattern counting only (its weight spaces are spanned
//!   by basis tableaux, so pattern counts are exact dimensions).
//!
//! Infinite universes are lazy: membership, weight-space queries and bounded
//! windows are the only access paths.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{ActionTable, TableauBasis};
use crate::algebra::GeneratorSymbol;
use crate::enumeration::{enumerate_d_standard, weyl_dimension, DominantWeight, Series};
use crate::scalars::{half, int_ge, is_half_odd, rat_int, Rational};
use crate::tableau::{
    is_c_generic, is_c_standard, is_d_standard, join_cd, split_cd, tau_1, weight_c, TableauC,
    Weight,
};
use crate::{Error, Result};

/// True when the difference vector lies in the root lattice: integral with
/// even coordinate sum.
pub fn in_root_lattice(w: &Weight) -> bool {
    let mut sum = BigInt::zero();
    for x in &w.0 {
        if !x.is_integer() {
            return false;
        }
        sum += x.to_integer();
    }
    sum.is_even()
}

/// A weight coset modulo the root lattice, kept as a representative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightCoset(pub Weight);

impl WeightCoset {
    pub fn same_coset(&self, other: &WeightCoset) -> bool {
        in_root_lattice(&self.0.sub(&other.0))
    }
}

impl PartialEq for WeightCoset {
    fn eq(&self, other: &Self) -> bool {
        self.same_coset(other)
    }
}

/// Indices `k` with `2 mu_k` integral, 1-based.
pub fn int_two_mu(mu: &[Rational]) -> BTreeSet<usize> {
    mu.iter()
        .enumerate()
        .filter(|(_, m)| (rat_int(2) * *m).is_integer())
        .map(|(i, _)| i + 1)
        .collect()
}

/// The lattice cone `C_{plus,minus}`: coordinates nonnegative on `plus` and
/// nonpositive on `minus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub plus: BTreeSet<usize>,
    pub minus: BTreeSet<usize>,
}

impl ConeSpec {
    pub fn new(plus: BTreeSet<usize>, minus: BTreeSet<usize>) -> Result<Self> {
        if !plus.is_disjoint(&minus) {
            return Err(Error::BadSpec("cone index sets must be disjoint".into()));
        }
        Ok(ConeSpec { plus, minus })
    }

    /// Membership of a root-lattice vector; non-lattice input is rejected.
    pub fn contains(&self, x: &Weight) -> Result<bool> {
        if !in_root_lattice(x) {
            return Err(Error::BadSpec(format!("{x} is not in the root lattice")));
        }
        let ok = self.plus.iter().all(|&k| !x.0[k - 1].is_negative())
            && self.minus.iter().all(|&k| !x.0[k - 1].is_positive());
        Ok(ok)
    }

    /// Intersection, when it is again a sign-pattern cone.
    pub fn intersect(&self, other: &ConeSpec) -> Option<ConeSpec> {
        let plus: BTreeSet<usize> = self.plus.union(&other.plus).cloned().collect();
        let minus: BTreeSet<usize> = self.minus.union(&other.minus).cloned().collect();
        ConeSpec::new(plus, minus).ok()
    }
}

/// A declared basis universe.
#[derive(Debug, Clone, PartialEq)]
pub enum ModuleSpec {
    FiniteC { lambda: DominantWeight },
    GenericC { seed: TableauC },
    Bounded { mu: Vec<Rational>, lambda: DominantWeight },
    BoundedSubPlus { mu: Vec<Rational>, lambda: DominantWeight, k: usize },
    Subquotient { mu: Vec<Rational>, lambda: DominantWeight, sigma: BTreeSet<usize> },
}

fn validate_bounded(mu: &[Rational], lambda: &DominantWeight) -> Result<()> {
    if lambda.series != Series::D {
        return Err(Error::BadSpec("bounded modules take a series D weight".into()));
    }
    if mu.len() != lambda.n() {
        return Err(Error::BadSpec("mu and lambda must have the same length".into()));
    }
    // Exactly the parameters for which the basis is a C-regular set.
    if !lambda.weight.0.iter().all(is_half_odd) {
        return Err(Error::BadSpec("lambda must have half-odd-integer entries".into()));
    }
    if mu.iter().any(|m| m.is_integer()) {
        return Err(Error::BadSpec("mu entries must be non-integral".into()));
    }
    Ok(())
}

impl ModuleSpec {
    pub fn finite_c(lambda: DominantWeight) -> Result<Self> {
        if lambda.series != Series::C {
            return Err(Error::BadSpec("finite type C module takes a series C weight".into()));
        }
        Ok(ModuleSpec::FiniteC { lambda })
    }

    pub fn generic_c(seed: TableauC) -> Result<Self> {
        if !is_c_generic(&seed) {
            return Err(Error::BadSpec("seed tableau is not C-generic".into()));
        }
        Ok(ModuleSpec::GenericC { seed })
    }

    pub fn bounded(mu: Vec<Rational>, lambda: DominantWeight) -> Result<Self> {
        validate_bounded(&mu, &lambda)?;
        Ok(ModuleSpec::Bounded { mu, lambda })
    }

    pub fn bounded_sub_plus(mu: Vec<Rational>, lambda: DominantWeight, k: usize) -> Result<Self> {
        validate_bounded(&mu, &lambda)?;
        if k < 1 || k > mu.len() {
            return Err(Error::BadIndex(format!("submodule index {k} out of range")));
        }
        if !is_half_odd(&mu[k - 1]) {
            return Err(Error::BadSpec(format!(
                "mu_{k} must be a half-odd integer for the submodule cut"
            )));
        }
        Ok(ModuleSpec::BoundedSubPlus { mu, lambda, k })
    }

    pub fn subquotient(
        mu: Vec<Rational>,
        lambda: DominantWeight,
        sigma: BTreeSet<usize>,
    ) -> Result<Self> {
        validate_bounded(&mu, &lambda)?;
        let int = int_two_mu(&mu);
        if !sigma.is_subset(&int) {
            return Err(Error::BadSpec(format!(
                "sigma must be a subset of Int(2 mu) = {int:?}"
            )));
        }
        Ok(ModuleSpec::Subquotient { mu, lambda, sigma })
    }

    pub fn n(&self) -> usize {
        match self {
            ModuleSpec::FiniteC { lambda } => lambda.n(),
            ModuleSpec::GenericC { seed } => seed.n(),
            ModuleSpec::Bounded { lambda, .. }
            | ModuleSpec::BoundedSubPlus { lambda, .. }
            | ModuleSpec::Subquotient { lambda, .. } => lambda.n(),
        }
    }

    /// Whether the closed formulas act on this universe directly. Subquotient
    /// sections are reached through pattern counting, not through the action.
    pub fn supports_action(&self) -> bool {
        !matches!(self, ModuleSpec::Subquotient { .. })
    }

    pub fn membership(&self, t: &TableauC) -> bool {
        if t.n() != self.n() {
            return false;
        }
        match self {
            ModuleSpec::FiniteC { lambda } => {
                t.top_row() == lambda.top_row().as_slice() && is_c_standard(t)
            }
            ModuleSpec::GenericC { seed } => {
                let n = seed.n();
                if t.top_row() != seed.top_row() {
                    return false;
                }
                (1..=n).all(|k| {
                    (1..=k).all(|i| {
                        (t.l(k, i) - seed.l(k, i)).is_integer()
                            && (t.lp(k, i) - seed.lp(k, i)).is_integer()
                    })
                })
            }
            ModuleSpec::Bounded { mu, lambda } => bounded_membership(t, mu, lambda),
            ModuleSpec::BoundedSubPlus { mu, lambda, k } => {
                bounded_membership(t, mu, lambda) && int_ge(t.lp(*k, 1), &half())
            }
            ModuleSpec::Subquotient { mu, lambda, sigma } => {
                if !bounded_membership(t, mu, lambda) {
                    return false;
                }
                let int = int_two_mu(mu);
                sigma.iter().all(|&i| int_ge(t.lp(i, 1), &half()))
                    && int.difference(sigma).all(|&j| !int_ge(t.lp(j, 1), &half()))
            }
        }
    }
}

fn bounded_membership(t: &TableauC, mu: &[Rational], lambda: &DominantWeight) -> bool {
    let (d, column) = split_cd(t);
    if d.top_row() != lambda.top_row().as_slice() {
        return false;
    }
    if !column.iter().zip(mu).all(|(c, m)| (c - m).is_integer()) {
        return false;
    }
    is_d_standard(&d)
}

impl TableauBasis for ModuleSpec {
    fn contains(&self, t: &TableauC) -> bool {
        self.membership(t)
    }
}

// ---------------------------------------------------------------------------
// Serialization of module specs.

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
enum SpecDto {
    FiniteC { lambda: Weight },
    GenericC { seed: TableauC },
    Bounded { mu: Weight, lambda: Weight },
    BoundedSubPlus { mu: Weight, lambda: Weight, k: usize },
    Subquotient { mu: Weight, lambda: Weight, sigma: Vec<usize> },
}

impl Serialize for ModuleSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dto = match self.clone() {
            ModuleSpec::FiniteC { lambda } => SpecDto::FiniteC { lambda: lambda.weight },
            ModuleSpec::GenericC { seed } => SpecDto::GenericC { seed },
            ModuleSpec::Bounded { mu, lambda } => {
                SpecDto::Bounded { mu: Weight(mu), lambda: lambda.weight }
            }
            ModuleSpec::BoundedSubPlus { mu, lambda, k } => {
                SpecDto::BoundedSubPlus { mu: Weight(mu), lambda: lambda.weight, k }
            }
            ModuleSpec::Subquotient { mu, lambda, sigma } => SpecDto::Subquotient {
                mu: Weight(mu),
                lambda: lambda.weight,
                sigma: sigma.into_iter().collect(),
            },
        };
        dto.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ModuleSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = SpecDto::deserialize(d)?;
        let built = match dto {
            SpecDto::FiniteC { lambda } => {
                DominantWeight::new(Series::C, lambda).and_then(ModuleSpec::finite_c)
            }
            SpecDto::GenericC { seed } => ModuleSpec::generic_c(seed),
            SpecDto::Bounded { mu, lambda } => {
                DominantWeight::new(Series::D, lambda).and_then(|l| ModuleSpec::bounded(mu.0, l))
            }
            SpecDto::BoundedSubPlus { mu, lambda, k } => DominantWeight::new(Series::D, lambda)
                .and_then(|l| ModuleSpec::bounded_sub_plus(mu.0, l, k)),
            SpecDto::Subquotient { mu, lambda, sigma } => DominantWeight::new(Series::D, lambda)
                .and_then(|l| ModuleSpec::subquotient(mu.0, l, sigma.into_iter().collect())),
        };
        built.map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Supports, weights and special members of the bounded modules.

/// The base point of the support coset: `2 mu + lambda + 1`.
pub fn base_weight(mu: &[Rational], lambda: &DominantWeight) -> Weight {
    Weight(
        mu.iter()
            .zip(&lambda.weight.0)
            .map(|(m, l)| rat_int(2) * m + l + rat_int(1))
            .collect(),
    )
}

/// Support test: `gamma` lies in `2 mu + lambda + 1 + Q_C`.
pub fn support_contains(mu: &[Rational], lambda: &DominantWeight, gamma: &Weight) -> bool {
    in_root_lattice(&gamma.sub(&base_weight(mu, lambda)))
}

/// Common dimension of the weight spaces: `dim L_D(lambda) / 2^{n-1}`.
pub fn degree(lambda: &DominantWeight) -> Result<BigInt> {
    let dim = weyl_dimension(lambda)?;
    let denom = BigInt::one() << (lambda.n() - 1);
    let (q, r) = dim.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "dim L_D = {dim} is not divisible by 2^(n-1)"
        )));
    }
    Ok(q)
}

/// The basis of the `gamma` weight space of `V(mu, lambda)`: one extension
/// per D-standard part in the matching row-sum parity class, with the first
/// primed column solved from the weight equation.
pub fn weight_space_basis(
    mu: &[Rational],
    lambda: &DominantWeight,
    gamma: &Weight,
) -> Result<Vec<TableauC>> {
    validate_bounded(mu, lambda)?;
    if !support_contains(mu, lambda, gamma) {
        return Err(Error::NotMember(format!(
            "{gamma} is not in the support coset of the module"
        )));
    }
    let n = lambda.n();
    let mut out = Vec::new();
    for d in enumerate_d_standard(lambda)? {
        let mut column = Vec::with_capacity(n);
        let mut ok = true;
        for k in 1..=n {
            let prev = if k >= 2 { d.row_sum(k - 1) } else { Rational::zero() };
            let c = (&gamma.0[k - 1] - rat_int(2) * d.primed_row_sum(k) + d.row_sum(k) + prev
                - rat_int(k as i64)
                + half())
                / rat_int(2);
            if !(&c - &mu[k - 1]).is_integer() {
                ok = false;
                break;
            }
            column.push(c);
        }
        if !ok {
            continue;
        }
        let t = join_cd(&d, &column)?;
        debug_assert_eq!(&weight_c(&t), gamma);
        out.push(t);
    }
    out.sort();
    Ok(out)
}

/// Weight-space dimension of the section `V(mu, lambda, Sigma)` at `gamma`:
/// ambient fiber filtered by the first-column sign pattern.
pub fn subquotient_dims(
    mu: &[Rational],
    lambda: &DominantWeight,
    sigma: &BTreeSet<usize>,
    gamma: &Weight,
) -> Result<usize> {
    let spec = ModuleSpec::subquotient(mu.to_vec(), lambda.clone(), sigma.clone())?;
    if !support_contains(mu, lambda, gamma) {
        return Ok(0);
    }
    let fiber = weight_space_basis(mu, lambda, gamma)?;
    Ok(fiber.iter().filter(|t| spec.membership(t)).count())
}

/// The constant-columns member: `w'_{k1} = mu_k`, all other columns repeat
/// the top row.
pub fn special_upper(mu: &[Rational], lambda: &DominantWeight) -> Result<TableauC> {
    validate_bounded(mu, lambda)?;
    let n = lambda.n();
    let ell = lambda.top_row();
    let rows: Vec<Vec<Rational>> = (1..=n).map(|k| ell[..k].to_vec()).collect();
    let primed: Vec<Vec<Rational>> = (1..=n)
        .map(|k| {
            let mut row = vec![mu[k - 1].clone()];
            row.extend_from_slice(&ell[1..k]);
            row
        })
        .collect();
    let t = TableauC::new(n, rows, primed)?;
    debug_assert!(bounded_membership(&t, mu, lambda));
    Ok(t)
}

/// The alternating-first-column member: `w_{n,1} = ell_1` and
/// `w_{k-1,1} = 1 - w_{k,1}` going down; other columns repeat the top row.
pub fn special_lower(mu: &[Rational], lambda: &DominantWeight) -> Result<TableauC> {
    validate_bounded(mu, lambda)?;
    let n = lambda.n();
    let ell = lambda.top_row();
    let mut first = vec![Rational::zero(); n];
    first[n - 1] = ell[0].clone();
    for k in (1..n).rev() {
        first[k - 1] = rat_int(1) - &first[k];
    }
    let rows: Vec<Vec<Rational>> = (1..=n)
        .map(|k| {
            let mut row = vec![first[k - 1].clone()];
            row.extend_from_slice(&ell[1..k]);
            row
        })
        .collect();
    let primed: Vec<Vec<Rational>> = (1..=n)
        .map(|k| {
            let mut row = vec![mu[k - 1].clone()];
            row.extend_from_slice(&ell[1..k]);
            row
        })
        .collect();
    let t = TableauC::new(n, rows, primed)?;
    debug_assert!(bounded_membership(&t, mu, lambda));
    Ok(t)
}

/// The distinguished member of `V(1/2, lambda)`.
pub fn t_w_lambda(lambda: &DominantWeight) -> Result<TableauC> {
    let mu = vec![half(); lambda.n()];
    special_lower(&mu, lambda)
}

/// Annihilation test under the nilpotent radical: `F_{k-1,k}` for `k = 2..n`
/// and `F_{-j,j}` for `j = 1..n`.
pub fn is_primitive(table: &ActionTable, spec: &ModuleSpec, t: &TableauC) -> Result<bool> {
    if !spec.membership(t) {
        return Err(Error::NotMember("primitivity input".into()));
    }
    let n = spec.n();
    for k in 2..=n {
        let g = GeneratorSymbol::new(k as i32 - 1, k as i32);
        if !table.act_tableau(&g, t, spec)?.is_zero() {
            return Ok(false);
        }
    }
    for j in 1..=n {
        let g = GeneratorSymbol::new(-(j as i32), j as i32);
        if !table.act_tableau(&g, t, spec)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Classification.

/// Sections are isomorphic iff the sigma sets agree and the parameters match
/// directly or through the first long reflection.
pub fn iso_equivalent(
    (mu_a, lam_a, sig_a): (&[Rational], &Weight, &BTreeSet<usize>),
    (mu_b, lam_b, sig_b): (&[Rational], &Weight, &BTreeSet<usize>),
) -> bool {
    if sig_a != sig_b || mu_a.len() != mu_b.len() || lam_a.n() != lam_b.n() {
        return false;
    }
    let two_diff = Weight(
        mu_a.iter()
            .zip(mu_b)
            .map(|(a, b)| rat_int(2) * (a - b))
            .collect(),
    );
    let case_a = lam_a == lam_b && in_root_lattice(&two_diff);
    let case_b = *lam_a == tau_1(lam_b)
        && in_root_lattice(&two_diff.sub(&Weight::epsilon(mu_a.len(), 1)));
    case_a || case_b
}

/// Finds `mu` with non-integral entries whose bounded module has the target
/// support coset; `None` exactly on the one unreachable coset
/// `lambda + eps_1 + Q_C`.
pub fn psi_reachable(lambda: &DominantWeight, target: &Weight) -> Result<Option<Vec<Rational>>> {
    if lambda.series != Series::D || !lambda.weight.0.iter().all(is_half_odd) {
        return Err(Error::BadSpec("psi takes a half-odd series D weight".into()));
    }
    let n = lambda.n();
    if target.n() != n {
        return Err(Error::BadSpec("target length mismatch".into()));
    }
    let excluded = lambda.weight.add(&Weight::epsilon(n, 1));
    if in_root_lattice(&target.sub(&excluded)) {
        return Ok(None);
    }

    fn is_even_integer(r: &Rational) -> bool {
        r.is_integer() && r.to_integer().is_even()
    }

    // Coordinatewise: either the leading congruence closes with an odd or
    // fractional gap, or the parity debt is pushed into the next coordinate.
    fn build(a: &[Rational], lam: &[Rational]) -> Vec<Rational> {
        let d = &a[0] - &lam[0] - rat_int(1);
        if a.len() == 1 {
            return vec![d / rat_int(2)];
        }
        if !is_even_integer(&d) {
            let mut out = vec![d / rat_int(2)];
            out.append(&mut build(&a[1..], &lam[1..]));
            out
        } else {
            let mut a_rest = a[1..].to_vec();
            a_rest[0] += rat_int(1);
            let mut out = vec![(&a[0] - &lam[0]) / rat_int(2)];
            out.append(&mut build(&a_rest, &lam[1..]));
            out
        }
    }

    let mu = build(&target.0, &lambda.weight.0);
    if mu.iter().any(|m| m.is_integer()) || !support_contains(&mu, lambda, target) {
        return Err(Error::Internal("constructed witness failed validation".into()));
    }
    Ok(Some(mu))
}

// ---------------------------------------------------------------------------
// Seeded sampling of infinite-basis members.

/// Random integer shifts of the constant-columns member, bounded by `radius`
/// and filtered by membership; deterministic in the seed.
pub fn sample_bounded_members(
    mu: &[Rational],
    lambda: &DominantWeight,
    radius: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<TableauC>> {
    let reference = special_upper(mu, lambda)?;
    let spec = ModuleSpec::bounded(mu.to_vec(), lambda.clone())?;
    let n = lambda.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts: u64 = 0;
    let limit = 200_000u64 + 20_000 * count as u64;
    while out.len() < count {
        attempts += 1;
        if attempts > limit {
            return Err(Error::Internal(format!(
                "sampling stalled after {attempts} attempts"
            )));
        }
        let mut t = reference.clone();
        for k in 1..=n {
            for i in 1..=k {
                if k < n {
                    t = t.with_delta(k, i, false, rng.gen_range(-radius..=radius));
                }
                t = t.with_delta(k, i, true, rng.gen_range(-radius..=radius));
            }
        }
        if spec.membership(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

/// Random integer shifts of a C-generic seed below the top row; every shift
/// is a member, so no filtering is needed.
pub fn sample_generic_members(
    seed_tableau: &TableauC,
    radius: i64,
    count: usize,
    seed: u64,
) -> Result<Vec<TableauC>> {
    let spec = ModuleSpec::generic_c(seed_tableau.clone())?;
    let n = seed_tableau.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut t = seed_tableau.clone();
        for k in 1..=n {
            for i in 1..=k {
                if k < n {
                    t = t.with_delta(k, i, false, rng.gen_range(-radius..=radius));
                }
                t = t.with_delta(k, i, true, rng.gen_range(-radius..=radius));
            }
        }
        debug_assert!(spec.membership(&t));
        out.push(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn lam_d(entries: &[(i64, i64)]) -> DominantWeight {
        DominantWeight::new(Series::D, Weight(entries.iter().map(|&(p, q)| rat(p, q)).collect()))
            .unwrap()
    }

    fn mu(values: &[(i64, i64)]) -> Vec<Rational> {
        values.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn bounded_membership_of_special_members() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let spec = ModuleSpec::bounded(m.clone(), lam.clone()).unwrap();
        let upper = special_upper(&m, &lam).unwrap();
        assert!(spec.membership(&upper));
        let (_, column) = split_cd(&upper);
        assert_eq!(column, vec![rat(1, 3), rat(2, 5)]);

        // A non-integral column offset leaves the basis.
        let shifted = TableauC::new(
            2,
            vec![upper.row(1).to_vec(), upper.row(2).to_vec()],
            vec![vec![&rat(1, 3) + rat(1, 7)], upper.primed_row(2).to_vec()],
        )
        .unwrap();
        assert!(!spec.membership(&shifted));
    }

    #[test]
    fn special_weights() {
        // weight(upper) = 2 mu + lambda - 2 lambda_1 * 1.
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let upper = special_upper(&m, &lam).unwrap();
        assert_eq!(weight_c(&upper), Weight(vec![rat(7, 6), rat(13, 10)]));

        // Even rank: weight(lower) = 2 mu + lambda.
        let lower = special_lower(&m, &lam).unwrap();
        assert_eq!(weight_c(&lower), Weight(vec![rat(2, 3) - half(), rat(4, 5) - half()]));

        // Odd rank: 2 mu + tau_1 lambda, and the first column alternates.
        let lam3 = lam_d(&[(-1, 2), (-1, 2), (-3, 2)]);
        let m3 = mu(&[(1, 3), (2, 5), (3, 7)]);
        let lower3 = special_lower(&m3, &lam3).unwrap();
        let expect = Weight(vec![
            rat(2, 3) + half(),
            rat(4, 5) - half(),
            rat(6, 7) - rat(3, 2),
        ]);
        assert_eq!(weight_c(&lower3), expect);
        let ell1 = &lam3.top_row()[0];
        assert_eq!(lower3.l(3, 1), ell1);
        assert_eq!(lower3.l(2, 1), &(rat_int(1) - ell1));
        assert_eq!(lower3.l(1, 1), ell1);
    }

    #[test]
    fn support_and_degree() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let base = base_weight(&m, &lam);
        assert!(support_contains(&m, &lam, &base));
        let off = base.add(&Weight::epsilon(2, 1));
        assert!(!support_contains(&m, &lam, &off));
        assert_eq!(degree(&lam).unwrap(), BigInt::from(1));
        assert_eq!(degree(&lam_d(&[(-1, 2), (-3, 2)])).unwrap(), BigInt::from(3));
        assert_eq!(degree(&lam_d(&[(-1, 2), (-1, 2), (-1, 2)])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn weight_fibers_have_the_degree_dimension() {
        let lam = lam_d(&[(-1, 2), (-3, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let base = base_weight(&m, &lam);
        for q in [[0i64, 0], [1, 1], [2, 0], [-1, 1], [-2, -2]] {
            let gamma = base.add(&Weight(vec![rat_int(q[0]), rat_int(q[1])]));
            let fiber = weight_space_basis(&m, &lam, &gamma).unwrap();
            assert_eq!(fiber.len(), 3);
            for t in &fiber {
                assert_eq!(weight_c(t), gamma);
            }
        }
        let off = base.add(&Weight::epsilon(2, 2));
        assert!(weight_space_basis(&m, &lam, &off).is_err());
    }

    #[test]
    fn subquotient_pattern_counting() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let m = mu(&[(1, 2), (1, 2)]);
        let sigma: BTreeSet<usize> = [1usize, 2].into_iter().collect();
        let base = base_weight(&m, &lam);
        // Deep inside the cone the section has full degree; on the other side
        // of a wall it vanishes.
        let inside = base.add(&Weight(vec![rat_int(4), rat_int(2)]));
        assert_eq!(subquotient_dims(&m, &lam, &sigma, &inside).unwrap(), 1);
        let outside = base.add(&Weight(vec![rat_int(-4), rat_int(-2)]));
        assert_eq!(subquotient_dims(&m, &lam, &sigma, &outside).unwrap(), 0);
    }

    #[test]
    fn iso_equivalence_cases() {
        let lam = Weight(vec![rat(-1, 2), rat(-1, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let sigma = BTreeSet::new();
        // Reflexive.
        assert!(iso_equivalent((&m, &lam, &sigma), (&m, &lam, &sigma)));
        // Shift mu by (1,1): 2(mu - mu') = (-2,-2) is in the lattice.
        let m2: Vec<Rational> = m.iter().map(|x| x + rat_int(1)).collect();
        assert!(iso_equivalent((&m, &lam, &sigma), (&m2, &lam, &sigma)));
        // Long-reflection case: mu' = mu - eps_1/2, lambda' = tau_1 lambda.
        let mut m3 = m.clone();
        m3[0] -= half();
        let lam3 = tau_1(&lam);
        assert!(iso_equivalent((&m, &lam, &sigma), (&m3, &lam3, &sigma)));
        // Sigma mismatch.
        let sig2: BTreeSet<usize> = [1usize].into_iter().collect();
        let m_half = mu(&[(1, 2), (1, 2)]);
        assert!(!iso_equivalent((&m_half, &lam, &sigma), (&m_half, &lam, &sig2)));
    }

    #[test]
    fn psi_reachability() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        // The excluded coset.
        let excluded = lam.weight.add(&Weight::epsilon(2, 1));
        assert_eq!(psi_reachable(&lam, &excluded).unwrap(), None);
        // lambda + 1 is reachable.
        let target = lam.weight.add(&Weight::constant(2, rat_int(1)));
        let w = psi_reachable(&lam, &target).unwrap().unwrap();
        assert!(support_contains(&w, &lam, &target));
        assert!(w.iter().all(|x| !x.is_integer()));
        // A fractional coset.
        let target2 = Weight(vec![rat(1, 3), rat(2, 7)]);
        let w2 = psi_reachable(&lam, &target2).unwrap().unwrap();
        assert!(support_contains(&w2, &lam, &target2));
    }

    #[test]
    fn cone_membership_basics() {
        let cone = ConeSpec::new([1usize].into_iter().collect(), BTreeSet::new()).unwrap();
        assert!(cone.contains(&Weight(vec![rat_int(2), rat_int(0)])).unwrap());
        assert!(!cone.contains(&Weight(vec![rat_int(-2), rat_int(0)])).unwrap());
        // The everything cone.
        let all = ConeSpec::new(BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(all.contains(&Weight(vec![rat_int(-3), rat_int(1)])).unwrap());
        // Rejects non-lattice vectors.
        assert!(all.contains(&Weight(vec![rat(1, 2), rat(1, 2)])).is_err());
        assert!(cone.contains(&Weight(vec![rat_int(1), rat_int(0)])).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_basis() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let m = mu(&[(1, 3), (2, 5)]);
        let spec = ModuleSpec::bounded(m.clone(), lam.clone()).unwrap();
        let a = sample_bounded_members(&m, &lam, 2, 20, 7).unwrap();
        let b = sample_bounded_members(&m, &lam, 2, 20, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|t| spec.membership(t)));
    }

    #[test]
    fn spec_serde_round_trip() {
        let lam = lam_d(&[(-1, 2), (-1, 2)]);
        let spec = ModuleSpec::bounded(mu(&[(1, 3), (2, 5)]), lam).unwrap();
        let js = serde_json::to_string(&spec).unwrap();
        assert!(js.contains("\"variant\":\"bounded\""));
        assert!(js.contains("\"1/3\""));
        let back: ModuleSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, spec);
        // Invalid parameters are rejected at parse time.
        let bad = r#"{"variant":"bounded","mu":["1","2/5"],"lambda":["-1/2","-1/2"]}"#;
        assert!(serde_json::from_str::<ModuleSpec>(bad).is_err());
    }
}
