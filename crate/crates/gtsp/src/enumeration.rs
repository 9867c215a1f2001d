//! Exhaustive enumeration of standard tableau sets, the Weyl dimension
//! oracle, the entry-shift maps `f_k`/`f_A`, row-sum parity classes, and the
//! bound `t_k`.
//!
//! Enumeration walks rows top-down: the fixed top row forces an integer-shift
//! interval for every entry of the next row, so the search is finite and
//! complete by construction.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalars::{half, int_ge, integer_distance, rat_int, Rational};
use crate::tableau::{is_d_standard, rho_c, rho_d, TableauC, TableauD, Weight};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    C,
    D,
}

/// A dominant weight for `sp(2n)` (series C) or `so(2n)` (series D).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominantWeight {
    pub series: Series,
    pub weight: Weight,
}

impl DominantWeight {
    pub fn new(series: Series, weight: Weight) -> Result<Self> {
        let v = &weight.0;
        let n = v.len();
        if n < 2 {
            return Err(Error::NotDominant("rank must be >= 2".into()));
        }
        for i in 0..n - 1 {
            if !int_ge(&v[i], &v[i + 1]) {
                return Err(Error::NotDominant(format!(
                    "entry {} is not >= entry {} in the integer-shift order",
                    i + 1,
                    i + 2
                )));
            }
        }
        let head_ok = match series {
            Series::C => int_ge(&Rational::zero(), &v[0]),
            Series::D => int_ge(&Rational::zero(), &(&v[0] + &v[1])),
        };
        if !head_ok {
            return Err(Error::NotDominant(match series {
                Series::C => "-lambda_1 must be a nonnegative integer".into(),
                Series::D => "-lambda_1 - lambda_2 must be a nonnegative integer".into(),
            }));
        }
        Ok(DominantWeight { series, weight })
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    /// The common top row of the standard set: `lambda + rho + 1/2`.
    pub fn top_row(&self) -> Vec<Rational> {
        let rho = match self.series {
            Series::C => rho_c(self.n()),
            Series::D => rho_d(self.n()),
        };
        self.weight
            .0
            .iter()
            .zip(&rho.0)
            .map(|(l, r)| l + r + half())
            .collect()
    }
}

/// All values `x` with `lo <= x <= hi` in the integer-shift order, listed
/// decreasing from `hi`; empty unless `hi - lo` is a nonnegative integer.
fn int_shift_interval(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    match integer_distance(hi, lo) {
        Some(d) if !d.is_negative() => {
            let steps: i64 = (&d).try_into().expect("interval too large");
            (0..=steps).map(|t| hi - rat_int(t)).collect()
        }
        _ => Vec::new(),
    }
}

fn min_rat(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

fn cartesian(options: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(rows.len() * opts.len());
        for prefix in &rows {
            for x in opts {
                let mut row = prefix.clone();
                row.push(x.clone());
                next.push(row);
            }
        }
        rows = next;
    }
    rows
}

/// The set of all C-standard tableaux with top row `lambda + rho_C + 1/2`.
pub fn enumerate_c_standard(lambda: &DominantWeight) -> Result<Vec<TableauC>> {
    if lambda.series != Series::C {
        return Err(Error::BadSpec("series C weight required".into()));
    }
    let n = lambda.n();
    let top = lambda.top_row();
    let cap = -half();
    let mut out = Vec::new();

    // State carries rows k..n already fixed, top-down.
    fn descend(
        n: usize,
        k: usize,
        row_k: &[Rational],
        cap: &Rational,
        unprimed_down: &mut Vec<Vec<Rational>>,
        primed_down: &mut Vec<Vec<Rational>>,
        out: &mut Vec<TableauC>,
    ) {
        let mut primed_opts = Vec::with_capacity(k);
        primed_opts.push(int_shift_interval(&row_k[0], cap));
        for i in 2..=k {
            primed_opts.push(int_shift_interval(&row_k[i - 1], &(&row_k[i - 2] - rat_int(1))));
        }
        for primed_row in cartesian(&primed_opts) {
            primed_down.push(primed_row.clone());
            if k == 1 {
                let mut rows = unprimed_down.clone();
                rows.reverse();
                let mut primed = primed_down.clone();
                primed.reverse();
                out.push(TableauC::new(n, rows, primed).expect("enumerated shape"));
            } else {
                let mut row_opts = Vec::with_capacity(k - 1);
                for i in 1..=k - 1 {
                    row_opts.push(int_shift_interval(
                        &(&primed_row[i] + rat_int(1)),
                        &primed_row[i - 1],
                    ));
                }
                for row_below in cartesian(&row_opts) {
                    unprimed_down.push(row_below.clone());
                    descend(n, k - 1, &row_below, cap, unprimed_down, primed_down, out);
                    unprimed_down.pop();
                }
            }
            primed_down.pop();
        }
    }

    let mut unprimed_down = vec![top.clone()];
    let mut primed_down = Vec::new();
    descend(n, n, &top, &cap, &mut unprimed_down, &mut primed_down, &mut out);
    out.sort();
    Ok(out)
}

/// The set of all D-standard tableaux with top row `lambda + rho_D + 1/2`.
pub fn enumerate_d_standard(lambda: &DominantWeight) -> Result<Vec<TableauD>> {
    if lambda.series != Series::D {
        return Err(Error::BadSpec("series D weight required".into()));
    }
    let n = lambda.n();
    let top = lambda.top_row();
    let mut out = Vec::new();

    fn descend(
        n: usize,
        k: usize,
        row_k: &[Rational],
        unprimed_down: &mut Vec<Vec<Rational>>,
        primed_down: &mut Vec<Vec<Rational>>,
        out: &mut Vec<TableauD>,
    ) {
        if k == 1 {
            let mut rows = unprimed_down.clone();
            rows.reverse();
            let mut primed = primed_down.clone();
            primed.reverse();
            out.push(TableauD::new(n, rows, primed).expect("enumerated shape"));
            return;
        }
        // Primed row k holds columns 2..k.
        let mut primed_opts = Vec::with_capacity(k - 1);
        primed_opts.push(int_shift_interval(
            &row_k[1],
            &min_rat(&row_k[0] - rat_int(1), -&row_k[0]),
        ));
        for i in 3..=k {
            primed_opts.push(int_shift_interval(&row_k[i - 1], &(&row_k[i - 2] - rat_int(1))));
        }
        for primed_row in cartesian(&primed_opts) {
            let mut row_opts = Vec::with_capacity(k - 1);
            row_opts.push(int_shift_interval(
                &(&primed_row[0] + rat_int(1)),
                &-&primed_row[0],
            ));
            for i in 2..=k - 1 {
                row_opts.push(int_shift_interval(
                    &(&primed_row[i - 1] + rat_int(1)),
                    &primed_row[i - 2],
                ));
            }
            primed_down.push(primed_row);
            for row_below in cartesian(&row_opts) {
                unprimed_down.push(row_below.clone());
                descend(n, k - 1, &row_below, unprimed_down, primed_down, out);
                unprimed_down.pop();
            }
            primed_down.pop();
        }
    }

    let mut unprimed_down = vec![top.clone()];
    let mut primed_down = Vec::new();
    descend(n, n, &top, &mut unprimed_down, &mut primed_down, &mut out);
    out.sort();
    Ok(out)
}

fn dot(w: &[Rational], alpha: &[i64]) -> Rational {
    w.iter()
        .zip(alpha)
        .map(|(x, a)| x * rat_int(*a))
        .sum()
}

fn positive_roots(series: Series, n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut diff = vec![0i64; n];
            diff[i] = 1;
            diff[j] = -1;
            roots.push(diff);
            let mut sum = vec![0i64; n];
            sum[i] = -1;
            sum[j] = -1;
            roots.push(sum);
        }
    }
    if series == Series::C {
        for k in 0..n {
            let mut long = vec![0i64; n];
            long[k] = -2;
            roots.push(long);
        }
    }
    roots
}

/// Weyl dimension of the simple module: the product formula over the
/// positive roots fixed by the dominance conventions above.
pub fn weyl_dimension(lambda: &DominantWeight) -> Result<BigInt> {
    let n = lambda.n();
    let rho = match lambda.series {
        Series::C => rho_c(n),
        Series::D => rho_d(n),
    };
    let shifted: Vec<Rational> = lambda.weight.0.iter().zip(&rho.0).map(|(l, r)| l + r).collect();
    let mut dim = Rational::one();
    for alpha in positive_roots(lambda.series, n) {
        dim *= dot(&shifted, &alpha) / dot(&rho.0, &alpha);
    }
    if !dim.is_integer() || !dim.is_positive() {
        return Err(Error::Internal(format!(
            "Weyl product is not a positive integer: {dim}"
        )));
    }
    Ok(dim.to_integer())
}

/// The single-step map on `D_st`: adds 1 to `u_{k1}` unless that collides
/// with `-u'_{k2}` or `-u'_{k+1,2}`, in which case it subtracts 1. The
/// nonexistent entry `u'_{1,2}` imposes no condition.
pub fn f_shift(t: &TableauD, k: usize) -> Result<TableauD> {
    let n = t.n();
    if k < 1 || k >= n {
        return Err(Error::BadIndex(format!("f_{k} needs 1 <= k < {n}")));
    }
    if !is_d_standard(t) {
        return Err(Error::NotMember("f_k input must be D-standard".into()));
    }
    let clear_own = k < 2 || t.u(k, 1) != &-t.up(k, 2);
    let clear_above = t.u(k, 1) != &-t.up(k + 1, 2);
    let amount = if clear_own && clear_above { 1 } else { -1 };
    let out = t.with_delta(k, 1, false, amount);
    if !is_d_standard(&out) {
        return Err(Error::Internal(format!("f_{k} left the standard set")));
    }
    Ok(out)
}

/// Composite of `f_k` over a subset of `1..n-1`; the factors commute.
pub fn f_subset(t: &TableauD, a: &BTreeSet<usize>) -> Result<TableauD> {
    let mut out = t.clone();
    for &k in a.iter().rev() {
        out = f_shift(&out, k)?;
    }
    Ok(out)
}

/// Partition of `D_st` by the parity vector of the row sums `S_1..S_{n-1}`:
/// two tableaux are equivalent when every `S_k` difference is even. There
/// are exactly `2^{n-1}` classes, of equal size, and for any member the
/// orbit `{f_A}` over subsets `A` is a transversal.
pub fn weight_classes(lambda: &DominantWeight) -> Result<Vec<Vec<TableauD>>> {
    let all = enumerate_d_standard(lambda)?;
    if all.is_empty() {
        return Ok(Vec::new());
    }
    let base = &all[0];
    let mut classes: BTreeMap<Vec<bool>, Vec<TableauD>> = BTreeMap::new();
    for t in &all {
        let key: Vec<bool> = (1..t.n())
            .map(|k| {
                let d = t.row_sum(k) - base.row_sum(k);
                debug_assert!(d.is_integer());
                !(d.to_integer() % BigInt::from(2)).is_zero()
            })
            .collect();
        classes.entry(key).or_default().push(t.clone());
    }
    Ok(classes.into_values().collect())
}

/// `t_k = max over ordered pairs (R, W) of
/// floor(S'_k(R-W) - S_{k+1}(R-W)/2 - S_k(R-W)/2)`.
pub fn t_bound(lambda: &DominantWeight, k: usize) -> Result<BigInt> {
    let n = lambda.n();
    if k < 1 || k >= n {
        return Err(Error::BadIndex(format!("t_k needs 1 <= k < {n}")));
    }
    let all = enumerate_d_standard(lambda)?;
    if all.is_empty() {
        return Err(Error::NotDominant("empty standard set".into()));
    }
    let mut best: Option<BigInt> = None;
    for r in &all {
        for w in &all {
            let sp = r.primed_row_sum(k) - w.primed_row_sum(k);
            let s_next = r.row_sum(k + 1) - w.row_sum(k + 1);
            let s_k = r.row_sum(k) - w.row_sum(k);
            let value = (sp - (s_next + s_k) / rat_int(2)).floor().to_integer();
            best = Some(match best {
                Some(b) if b >= value => b,
                _ => value,
            });
        }
    }
    Ok(best.expect("nonempty"))
}

/// Sanity cross-check used by the CLI `dim` command.
#[derive(Debug, Serialize)]
pub struct DimReport {
    pub count: usize,
    pub weyl: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn dim_report(lambda: &DominantWeight) -> Result<DimReport> {
    let count = match lambda.series {
        Series::C => enumerate_c_standard(lambda)?.len(),
        Series::D => enumerate_d_standard(lambda)?.len(),
    };
    let weyl = weyl_dimension(lambda)?;
    let weyl: u128 = (&weyl)
        .try_into()
        .map_err(|_| Error::Internal("dimension exceeds u128".into()))?;
    Ok(DimReport { count, weyl, matches: count as u128 == weyl })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use crate::tableau::is_c_standard;

    fn dom(series: Series, entries: &[(i64, i64)]) -> DominantWeight {
        let w = Weight(entries.iter().map(|&(p, q)| rat(p, q)).collect());
        DominantWeight::new(series, w).unwrap()
    }

    #[test]
    fn dominance_validation() {
        assert!(DominantWeight::new(Series::C, Weight(vec![rat_int(0), rat_int(-1)])).is_ok());
        // lambda_1 > 0 is not C-dominant.
        assert!(DominantWeight::new(Series::C, Weight(vec![rat_int(1), rat_int(0)])).is_err());
        // Spinor weights are D-dominant when -l1-l2 >= 0.
        assert!(DominantWeight::new(Series::D, Weight(vec![rat(1, 2), rat(-1, 2)])).is_ok());
        assert!(DominantWeight::new(Series::D, Weight(vec![rat(1, 2), rat(1, 2)])).is_err());
    }

    #[test]
    fn seeded_counts() {
        assert_eq!(enumerate_c_standard(&dom(Series::C, &[(0, 1), (0, 1)])).unwrap().len(), 1);
        assert_eq!(enumerate_c_standard(&dom(Series::C, &[(0, 1), (-1, 1)])).unwrap().len(), 4);
        let d = enumerate_d_standard(&dom(Series::D, &[(-1, 2), (-1, 2)])).unwrap();
        assert_eq!(d.len(), 2);
        let mut u11: Vec<Rational> = d.iter().map(|t| t.u(1, 1).clone()).collect();
        u11.sort();
        assert_eq!(u11, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn enumerated_tableaux_are_standard() {
        for t in enumerate_c_standard(&dom(Series::C, &[(0, 1), (-1, 1)])).unwrap() {
            assert!(is_c_standard(&t));
        }
        for t in enumerate_d_standard(&dom(Series::D, &[(-1, 2), (-3, 2)])).unwrap() {
            assert!(is_d_standard(&t));
        }
    }

    #[test]
    fn weyl_oracle_matches_enumeration() {
        for lam in [
            dom(Series::C, &[(0, 1), (0, 1)]),
            dom(Series::C, &[(0, 1), (-1, 1)]),
            dom(Series::C, &[(-1, 1), (-2, 1)]),
            dom(Series::D, &[(-1, 2), (-1, 2)]),
            dom(Series::D, &[(-1, 2), (-3, 2)]),
            dom(Series::D, &[(0, 1), (-1, 1)]),
        ] {
            let r = dim_report(&lam).unwrap();
            assert!(r.matches, "mismatch for {:?}: {} vs {}", lam, r.count, r.weyl);
        }
    }

    #[test]
    fn f_shift_on_the_half_spin_pair() {
        let lam = dom(Series::D, &[(-1, 2), (-1, 2)]);
        let d = enumerate_d_standard(&lam).unwrap();
        let zero = d.iter().find(|t| t.u(1, 1) == &rat_int(0)).unwrap();
        let one = d.iter().find(|t| t.u(1, 1) == &rat_int(1)).unwrap();
        assert_eq!(&f_shift(zero, 1).unwrap(), one);
        assert_eq!(&f_shift(one, 1).unwrap(), zero);
    }

    #[test]
    fn f_subset_is_injective_in_the_subset() {
        let lam = dom(Series::D, &[(-1, 2), (-1, 2), (-1, 2)]);
        let d = enumerate_d_standard(&lam).unwrap();
        let t = &d[0];
        let mut seen = BTreeSet::new();
        for bits in 0..4u32 {
            let a: BTreeSet<usize> = (1..=2).filter(|k| bits & (1 << (k - 1)) != 0).collect();
            let out = f_subset(t, &a).unwrap();
            assert!(seen.insert(out), "f_A repeated a value");
        }
    }

    #[test]
    fn class_structure_of_the_half_spin_set() {
        // Two classes of size one: the row-sum parities differ.
        let lam = dom(Series::D, &[(-1, 2), (-1, 2)]);
        let classes = weight_classes(&lam).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn class_count_and_size_battery() {
        for lam in [
            dom(Series::D, &[(-1, 2), (-1, 2)]),
            dom(Series::D, &[(-1, 2), (-3, 2)]),
            dom(Series::D, &[(-1, 2), (-1, 2), (-1, 2)]),
            dom(Series::D, &[(-1, 2), (-1, 2), (-3, 2)]),
        ] {
            let n = lam.n();
            let classes = weight_classes(&lam).unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(classes.len(), 1 << (n - 1));
            assert!(classes.iter().all(|c| c.len() == total >> (n - 1)));
            // The f_A orbit of any member hits each class exactly once.
            let rep = classes[0][0].clone();
            let mut hit = BTreeSet::new();
            for bits in 0..(1u32 << (n - 1)) {
                let a: BTreeSet<usize> =
                    (1..n).filter(|k| bits & (1 << (k - 1)) != 0).collect();
                let img = f_subset(&rep, &a).unwrap();
                let class_idx = classes.iter().position(|c| c.contains(&img)).unwrap();
                assert!(hit.insert(class_idx));
            }
        }
    }

    #[test]
    fn t_bound_examples() {
        let lam = dom(Series::D, &[(-1, 2), (-1, 2)]);
        assert_eq!(t_bound(&lam, 1).unwrap(), BigInt::from(0));
        let lam3 = dom(Series::D, &[(-1, 2), (-1, 2), (-3, 2)]);
        for k in 1..=2 {
            assert!(t_bound(&lam3, k).unwrap() >= BigInt::from(0));
        }
    }
}
