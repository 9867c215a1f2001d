//! Tableau shapes of types C and D, their interleaving predicates, entry
//! shifts, row sums, and the weight map.
//!
//! A type C tableau on rank `n` holds `n^2 + n` rational entries: unprimed
//! rows `l_{k,1..k}` and primed rows `l'_{k,1..k}` for `k = 1..n`. A type D
//! tableau holds `n^2` entries: unprimed rows `u_{k,1..k}` for `k = 1..n` and
//! primed rows `u'_{k,2..k}` for `k = 2..n`. Entries are indexed 1-based,
//! rows bottom-up, and the "top row" is the unprimed row `n`.
//!
//! All comparisons in the standardness conditions are in the integer-shift
//! order of [`crate::scalars`]. A shifted variant of the type D conditions
//! (adding `-j + 3/2` per column) appears elsewhere in the literature; only
//! the unshifted form is stored here.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalars::{
    format_rational, half, int_ge, int_gt, integer_distance, is_half_odd, parse_rational, rat_int,
    Rational,
};
use crate::{Error, Result};

/// A weight of `sp(2n)` or `so(2n)` written in the basis `eps_1..eps_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![Rational::zero(); n])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }

    /// `eps_k` (1-based).
    pub fn epsilon(n: usize, k: usize) -> Weight {
        let mut v = vec![Rational::zero(); n];
        v[k - 1] = rat_int(1);
        Weight(v)
    }

    /// The constant vector `(a, ..., a)`.
    pub fn constant(n: usize, a: Rational) -> Weight {
        Weight(vec![a; n])
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let entries = v
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Weight(entries))
    }
}

/// Half sum of positive roots for `sp(2n)`: `(-1, -2, ..., -n)`.
pub fn rho_c(n: usize) -> Weight {
    Weight((1..=n).map(|k| rat_int(-(k as i64))).collect())
}

/// Half sum of positive roots for `so(2n)`: `(0, -1, ..., -n+1)`.
pub fn rho_d(n: usize) -> Weight {
    Weight((1..=n).map(|k| rat_int(-(k as i64) + 1)).collect())
}

/// The long-root reflection `tau_1`: negates the first coordinate.
pub fn tau_1(w: &Weight) -> Weight {
    let mut v = w.0.clone();
    v[0] = -&v[0];
    Weight(v)
}

/// A single-entry shift `+amount` on `l_{row,col}` or `l'_{row,col}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub row: usize,
    pub col: usize,
    pub primed: bool,
    pub amount: i64,
}

impl Shift {
    pub fn unprimed(row: usize, col: usize, amount: i64) -> Self {
        Shift { row, col, primed: false, amount }
    }

    pub fn primed(row: usize, col: usize, amount: i64) -> Self {
        Shift { row, col, primed: true, amount }
    }

    pub fn inverse(&self) -> Shift {
        Shift { amount: -self.amount, ..self.clone() }
    }
}

/// Type C tableau: rows `l_{k,1..k}` and `l'_{k,1..k}`, `k = 1..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableauC {
    n: usize,
    rows: Vec<Vec<Rational>>,
    primed: Vec<Vec<Rational>>,
}

/// Type D tableau: rows `u_{k,1..k}` for `k = 1..n`, `u'_{k,2..k}` for `k = 2..n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableauD {
    n: usize,
    rows: Vec<Vec<Rational>>,
    primed: Vec<Vec<Rational>>,
}

fn check_rows(rows: &[Vec<Rational>], lens: &[usize], what: &str) -> Result<()> {
    if rows.len() != lens.len() {
        return Err(Error::BadIndex(format!(
            "{what}: expected {} rows, got {}",
            lens.len(),
            rows.len()
        )));
    }
    for (k, (row, want)) in rows.iter().zip(lens).enumerate() {
        if row.len() != *want {
            return Err(Error::BadIndex(format!(
                "{what}: row {} has {} entries, expected {}",
                k + 1,
                row.len(),
                want
            )));
        }
    }
    Ok(())
}

impl TableauC {
    /// Rows bottom-up: `rows[k-1]` and `primed[k-1]` have `k` entries.
    pub fn new(n: usize, rows: Vec<Vec<Rational>>, primed: Vec<Vec<Rational>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadIndex(format!("rank must be >= 2, got {n}")));
        }
        let lens: Vec<usize> = (1..=n).collect();
        check_rows(&rows, &lens, "unprimed")?;
        check_rows(&primed, &lens, "primed")?;
        Ok(TableauC { n, rows, primed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `l_{k,i}`, 1-based.
    pub fn l(&self, k: usize, i: usize) -> &Rational {
        &self.rows[k - 1][i - 1]
    }

    /// `l'_{k,i}`, 1-based.
    pub fn lp(&self, k: usize, i: usize) -> &Rational {
        &self.primed[k - 1][i - 1]
    }

    pub fn row(&self, k: usize) -> &[Rational] {
        &self.rows[k - 1]
    }

    pub fn primed_row(&self, k: usize) -> &[Rational] {
        &self.primed[k - 1]
    }

    pub fn top_row(&self) -> &[Rational] {
        &self.rows[self.n - 1]
    }

    /// New tableau with one entry changed by an integer amount; used by the
    /// generator formulas with `amount = +-1`.
    pub fn with_delta(&self, row: usize, col: usize, primed: bool, amount: i64) -> TableauC {
        let mut t = self.clone();
        let slot = if primed {
            &mut t.primed[row - 1][col - 1]
        } else {
            &mut t.rows[row - 1][col - 1]
        };
        *slot += rat_int(amount);
        t
    }

    pub fn shifted(&self, s: &Shift) -> Result<TableauC> {
        if s.row < 1 || s.row > self.n || s.col < 1 || s.col > s.row {
            return Err(Error::BadIndex(format!(
                "shift ({},{}) out of shape for rank {}",
                s.row, s.col, self.n
            )));
        }
        Ok(self.with_delta(s.row, s.col, s.primed, s.amount))
    }

    /// Partial row sums `S_k(l)` and `S_k(l')` (the primed sum includes the
    /// first column).
    pub fn row_sums(&self) -> (Vec<Rational>, Vec<Rational>) {
        let s = self.rows.iter().map(|r| r.iter().sum()).collect();
        let sp = self.primed.iter().map(|r| r.iter().sum()).collect();
        (s, sp)
    }
}

impl TableauD {
    /// Rows bottom-up: `rows[k-1]` has `k` entries; `primed[k-2]` has `k-1`
    /// entries (columns `2..k` of primed row `k`), present for `k = 2..n`.
    pub fn new(n: usize, rows: Vec<Vec<Rational>>, primed: Vec<Vec<Rational>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadIndex(format!("rank must be >= 2, got {n}")));
        }
        let lens: Vec<usize> = (1..=n).collect();
        check_rows(&rows, &lens, "unprimed")?;
        let plens: Vec<usize> = (2..=n).map(|k| k - 1).collect();
        check_rows(&primed, &plens, "primed")?;
        Ok(TableauD { n, rows, primed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `u_{k,i}`, 1-based.
    pub fn u(&self, k: usize, i: usize) -> &Rational {
        &self.rows[k - 1][i - 1]
    }

    /// `u'_{k,i}` for `2 <= i <= k <= n`.
    pub fn up(&self, k: usize, i: usize) -> &Rational {
        &self.primed[k - 2][i - 2]
    }

    pub fn row(&self, k: usize) -> &[Rational] {
        &self.rows[k - 1]
    }

    pub fn top_row(&self) -> &[Rational] {
        &self.rows[self.n - 1]
    }

    pub fn with_delta(&self, row: usize, col: usize, primed: bool, amount: i64) -> TableauD {
        let mut t = self.clone();
        let slot = if primed {
            &mut t.primed[row - 2][col - 2]
        } else {
            &mut t.rows[row - 1][col - 1]
        };
        *slot += rat_int(amount);
        t
    }

    pub fn shifted(&self, s: &Shift) -> Result<TableauD> {
        let ok = s.row >= 1
            && s.row <= self.n
            && if s.primed {
                s.row >= 2 && s.col >= 2 && s.col <= s.row
            } else {
                s.col >= 1 && s.col <= s.row
            };
        if !ok {
            return Err(Error::BadIndex(format!(
                "shift ({},{},primed={}) out of shape for rank {}",
                s.row, s.col, s.primed, self.n
            )));
        }
        Ok(self.with_delta(s.row, s.col, s.primed, s.amount))
    }

    /// `S_k(u)` for `k = 1..n`.
    pub fn row_sum(&self, k: usize) -> Rational {
        self.rows[k - 1].iter().sum()
    }

    /// `S'_k(u)`: sum of primed row `k` over columns `2..k`; zero for `k = 1`.
    pub fn primed_row_sum(&self, k: usize) -> Rational {
        if k < 2 {
            Rational::zero()
        } else {
            self.primed[k - 2].iter().sum()
        }
    }
}

/// Conditions on a type C tableau: within every pair of adjacent rows the
/// entries interleave, with `-1/2` capping each first primed entry.
pub fn is_c_standard(t: &TableauC) -> bool {
    let n = t.n();
    let cap = -half();
    for k in 1..=n {
        if !int_ge(&cap, t.lp(k, 1)) {
            return false;
        }
        for i in 1..=k {
            if !int_ge(t.lp(k, i), t.l(k, i)) {
                return false;
            }
        }
        for i in 2..=k {
            if !int_gt(t.l(k, i - 1), t.lp(k, i)) {
                return false;
            }
        }
    }
    for k in 2..=n {
        for i in 1..=k - 1 {
            if !int_ge(t.lp(k, i), t.l(k - 1, i)) {
                return false;
            }
        }
        for i in 2..=k {
            if !int_gt(t.l(k - 1, i - 1), t.lp(k, i)) {
                return false;
            }
        }
    }
    true
}

/// Conditions on a type D tableau; the first comparison of each chain couples
/// signs: `-u'_{k,2} >= u_{k,1}` and `-u'_{k,2} >= u_{k-1,1}`.
pub fn is_d_standard(t: &TableauD) -> bool {
    let n = t.n();
    for k in 2..=n {
        let head = -t.up(k, 2);
        if !int_ge(&head, t.u(k, 1)) || !int_gt(t.u(k, 1), t.up(k, 2)) {
            return false;
        }
        for i in 2..=k {
            if !int_ge(t.up(k, i), t.u(k, i)) {
                return false;
            }
        }
        for i in 3..=k {
            if !int_gt(t.u(k, i - 1), t.up(k, i)) {
                return false;
            }
        }
        if !int_ge(&head, t.u(k - 1, 1)) {
            return false;
        }
        for i in 2..=k - 1 {
            if !int_ge(t.up(k, i), t.u(k - 1, i)) {
                return false;
            }
        }
        for i in 1..=k - 1 {
            if !int_gt(t.u(k - 1, i), t.up(k, i + 1)) {
                return false;
            }
        }
    }
    true
}

/// Returns the first violated regularity condition, if any. The four
/// conditions are exactly the nonvanishing of the coefficient denominators.
pub fn c_regularity_violation(t: &TableauC) -> Option<String> {
    let n = t.n();
    for k in 1..=n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if t.lp(k, a) == t.lp(k, i) {
                    return Some(format!("(i): l'_{{{k},{a}}} = l'_{{{k},{i}}}"));
                }
            }
        }
    }
    for k in 1..n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if t.l(k, a) == t.l(k, i) {
                    return Some(format!("(ii): l_{{{k},{a}}} = l_{{{k},{i}}}"));
                }
                if t.l(k, a) + t.l(k, i) == rat_int(1) {
                    return Some(format!("(iii): l_{{{k},{a}}} + l_{{{k},{i}}} = 1"));
                }
            }
            if t.l(k, i) == &half() {
                return Some(format!("(iv): 2 l_{{{k},{i}}} = 1"));
            }
        }
    }
    None
}

pub fn is_c_regular(t: &TableauC) -> bool {
    c_regularity_violation(t).is_none()
}

pub fn is_d_regular(t: &TableauD) -> bool {
    let n = t.n();
    for k in 2..=n {
        for i in 2..=k {
            for a in (i + 1)..=k {
                if t.up(k, a) == t.up(k, i) {
                    return false;
                }
            }
        }
    }
    for k in 1..n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if t.u(k, a) == t.u(k, i) || t.u(k, a) + t.u(k, i) == rat_int(1) {
                    return false;
                }
            }
        }
    }
    true
}

/// Genericity for type C: the regularity conditions hold for every integer
/// shift of the tableau, i.e. differences and pair sums are non-integral and
/// no sub-top unprimed entry is in `1/2 + Z`.
pub fn is_c_generic(t: &TableauC) -> bool {
    generic_conditions_i_iii(t) && {
        let n = t.n();
        (1..n).all(|k| (1..=k).all(|i| !is_half_odd(t.l(k, i))))
    }
}

/// Genericity for type C without the half-integer condition; applied to the
/// entries a type D action would divide by.
pub fn is_d_generic_c_shape(t: &TableauC) -> bool {
    generic_conditions_i_iii(t)
}

fn generic_conditions_i_iii(t: &TableauC) -> bool {
    let n = t.n();
    for k in 1..=n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if integer_distance(t.lp(k, a), t.lp(k, i)).is_some() {
                    return false;
                }
            }
        }
    }
    for k in 1..n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if integer_distance(t.l(k, a), t.l(k, i)).is_some() {
                    return false;
                }
                if (t.l(k, a) + t.l(k, i)).is_integer() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_d_generic(t: &TableauD) -> bool {
    let n = t.n();
    for k in 2..=n {
        for i in 2..=k {
            for a in (i + 1)..=k {
                if integer_distance(t.up(k, a), t.up(k, i)).is_some() {
                    return false;
                }
            }
        }
    }
    for k in 1..n {
        for i in 1..=k {
            for a in (i + 1)..=k {
                if integer_distance(t.u(k, a), t.u(k, i)).is_some()
                    || (t.u(k, a) + t.u(k, i)).is_integer()
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Splits off the first primed column: returns the type D remainder and the
/// removed column `(l'_{1,1}, ..., l'_{n,1})`.
pub fn split_cd(t: &TableauC) -> (TableauD, Vec<Rational>) {
    let n = t.n();
    let column: Vec<Rational> = (1..=n).map(|k| t.lp(k, 1).clone()).collect();
    let rows = t.rows.clone();
    let primed: Vec<Vec<Rational>> = (2..=n).map(|k| t.primed[k - 1][1..].to_vec()).collect();
    let d = TableauD { n, rows, primed };
    (d, column)
}

/// Inverse of [`split_cd`].
pub fn join_cd(d: &TableauD, column: &[Rational]) -> Result<TableauC> {
    let n = d.n();
    if column.len() != n {
        return Err(Error::BadIndex(format!(
            "column has {} entries, expected {n}",
            column.len()
        )));
    }
    let mut primed = Vec::with_capacity(n);
    for k in 1..=n {
        let mut row = Vec::with_capacity(k);
        row.push(column[k - 1].clone());
        if k >= 2 {
            row.extend_from_slice(&d.primed[k - 2]);
        }
        primed.push(row);
    }
    TableauC::new(n, d.rows.clone(), primed)
}

/// The weight map: `omega_k = 2 S_k(l') - S_k(l) - S_{k-1}(l) + k - 1/2`.
pub fn weight_c(t: &TableauC) -> Weight {
    let n = t.n();
    let (s, sp) = t.row_sums();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let prev = if k >= 2 { s[k - 2].clone() } else { Rational::zero() };
        let w = rat_int(2) * &sp[k - 1] - &s[k - 1] - prev + rat_int(k as i64) - half();
        out.push(w);
    }
    Weight(out)
}

/// Weight of a type C tableau given as D-part plus first primed column; the
/// same map as [`weight_c`] after [`join_cd`].
pub fn weight_from_parts(d: &TableauD, column: &[Rational]) -> Weight {
    let n = d.n();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let prev = if k >= 2 { d.row_sum(k - 1) } else { Rational::zero() };
        let w = rat_int(2) * (&column[k - 1] + d.primed_row_sum(k)) - d.row_sum(k) - prev
            + rat_int(k as i64)
            - half();
        out.push(w);
    }
    Weight(out)
}

// ---------------------------------------------------------------------------
// JSON interchange. Rows are serialized top-down (first list is row n), with
// rationals as strings.

#[derive(Serialize, Deserialize)]
struct TableauDto {
    #[serde(rename = "type")]
    kind: String,
    n: usize,
    rows: Vec<Vec<String>>,
    primed: Vec<Vec<String>>,
}

fn rows_to_strings_top_down(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .rev()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

fn rows_from_strings_top_down(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    let mut out: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect::<Result<_>>()?;
    out.reverse();
    Ok(out)
}

impl Serialize for TableauC {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauDto {
            kind: "C".into(),
            n: self.n,
            rows: rows_to_strings_top_down(&self.rows),
            primed: rows_to_strings_top_down(&self.primed),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TableauC {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = TableauDto::deserialize(d)?;
        if dto.kind != "C" {
            return Err(serde::de::Error::custom(format!(
                "expected tableau type C, got {:?}",
                dto.kind
            )));
        }
        let rows = rows_from_strings_top_down(&dto.rows).map_err(serde::de::Error::custom)?;
        let primed = rows_from_strings_top_down(&dto.primed).map_err(serde::de::Error::custom)?;
        TableauC::new(dto.n, rows, primed).map_err(serde::de::Error::custom)
    }
}

impl Serialize for TableauD {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauDto {
            kind: "D".into(),
            n: self.n,
            rows: rows_to_strings_top_down(&self.rows),
            primed: rows_to_strings_top_down(&self.primed),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TableauD {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dto = TableauDto::deserialize(d)?;
        if dto.kind != "D" {
            return Err(serde::de::Error::custom(format!(
                "expected tableau type D, got {:?}",
                dto.kind
            )));
        }
        let rows = rows_from_strings_top_down(&dto.rows).map_err(serde::de::Error::custom)?;
        let primed = rows_from_strings_top_down(&dto.primed).map_err(serde::de::Error::custom)?;
        TableauD::new(dto.n, rows, primed).map_err(serde::de::Error::custom)
    }
}
