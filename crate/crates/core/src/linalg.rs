//! Exact linear algebra over the integers on sparse rows.
//!
//! Two elimination modes, one per question:
//!
//! * [`row_echelon`] answers rank questions over the rationals. Rows may be
//!   rescaled, so every row is stripped to primitive content after each
//!   combination step.
//! * [`lattice_echelon`] and [`lattice_invariants`] answer questions about
//!   the integer row lattice. Only unimodular row operations are applied,
//!   never content stripping; non-unit pivots that survive are finished off
//!   by a dense Smith reduction.
//!
//! Arithmetic runs in `i128` and transparently restarts the whole
//! computation with big integers if anything overflows.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rational};

/// Sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Int)>;

trait ElimInt: Clone + Eq + std::fmt::Debug {
    fn one() -> Self;
    fn from_big(v: &Int) -> Option<Self>;
    fn to_big(&self) -> Int;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn gcd(&self, rhs: &Self) -> Self;
    fn exact_div(&self, rhs: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    /// `(g, u, v)` with `u*self + v*rhs = g = gcd(self, rhs) > 0`.
    fn xgcd(&self, rhs: &Self) -> (Self, Self, Self);
}

impl ElimInt for i128 {
    fn one() -> Self {
        1
    }
    fn from_big(v: &Int) -> Option<Self> {
        i128::try_from(v).ok()
    }
    fn to_big(&self) -> Int {
        Int::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let e = Integer::extended_gcd(self, rhs);
        (e.gcd, e.x, e.y)
    }
}

impl ElimInt for Int {
    fn one() -> Self {
        Int::from(1)
    }
    fn from_big(v: &Int) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> Int {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let e = Integer::extended_gcd(self, rhs);
        (e.gcd, e.x, e.y)
    }
}

fn convert_row<T: ElimInt>(row: &SparseRow) -> Option<Vec<(usize, T)>> {
    row.iter().map(|(c, v)| T::from_big(v).map(|t| (*c, t))).collect()
}

/// `a*x + b*y` over sorted sparse rows.
fn linear_combine<T: ElimInt>(
    a: &T,
    x: &[(usize, T)],
    b: &T,
    y: &[(usize, T)],
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|t| t.0).unwrap_or(usize::MAX);
        let cy = y.get(j).map(|t| t.0).unwrap_or(usize::MAX);
        let (col, v) = if cx == cy {
            let v = a.mul(&x[i].1)?.sub(&b.neg().mul(&y[j].1)?)?;
            i += 1;
            j += 1;
            (cx, v)
        } else if cx < cy {
            let v = a.mul(&x[i].1)?;
            i += 1;
            (cx, v)
        } else {
            let v = b.mul(&y[j].1)?;
            j += 1;
            (cy, v)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Some(out)
}

fn strip_content<T: ElimInt>(row: &mut [(usize, T)]) {
    let mut g: Option<T> = None;
    for (_, v) in row.iter() {
        g = Some(match g {
            None => v.clone(),
            Some(ref acc) => acc.gcd(v),
        });
        if g.as_ref().is_some_and(|g| g.is_unit()) {
            return;
        }
    }
    if let Some(g) = g {
        for (_, v) in row.iter_mut() {
            *v = v.exact_div(&g);
        }
    }
}

struct ElimState<T> {
    pivot_of_col: HashMap<usize, usize>,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: ElimInt> ElimState<T> {
    fn new() -> Self {
        ElimState { pivot_of_col: HashMap::new(), rows: Vec::new() }
    }

    /// Rank-mode insertion: strips content, cross-multiplies against the
    /// pivot at the leading column until the row leads at a free column or
    /// vanishes. Returns `None` on overflow.
    fn insert_stripped(&mut self, mut row: Vec<(usize, T)>) -> Option<()> {
        loop {
            strip_content(&mut row);
            let Some(&(col, ref lead)) = row.first() else { return Some(()) };
            let lead = lead.clone();
            match self.pivot_of_col.get(&col) {
                None => {
                    self.pivot_of_col.insert(col, self.rows.len());
                    self.rows.push(row);
                    return Some(());
                }
                Some(&slot) => {
                    let p = self.rows[slot][0].1.clone();
                    row = linear_combine(&p, &row, &lead.neg(), &self.rows[slot])?;
                }
            }
        }
    }

    /// Lattice-mode insertion: unimodular operations only. The stored pivot
    /// row may be replaced by a gcd combination of itself and the incoming
    /// row; the row lattice is preserved exactly.
    fn insert_unimodular(&mut self, mut row: Vec<(usize, T)>) -> Option<()> {
        loop {
            let Some(&(col, ref lead)) = row.first() else { return Some(()) };
            let a = lead.clone();
            match self.pivot_of_col.get(&col) {
                None => {
                    self.pivot_of_col.insert(col, self.rows.len());
                    self.rows.push(row);
                    return Some(());
                }
                Some(&slot) => {
                    let p = self.rows[slot][0].1.clone();
                    if p.divides(&a) {
                        let q = a.exact_div(&p);
                        row = linear_combine(&T::one(), &row, &q.neg(), &self.rows[slot])?;
                    } else {
                        let (g, u, v) = p.xgcd(&a);
                        let new_pivot = linear_combine(&u, &self.rows[slot], &v, &row)?;
                        let reduced =
                            linear_combine(&p.exact_div(&g), &row, &a.exact_div(&g).neg(), &self.rows[slot])?;
                        debug_assert_eq!(new_pivot.first().map(|t| t.0), Some(col));
                        self.rows[slot] = new_pivot;
                        row = reduced;
                    }
                }
            }
        }
    }

    fn into_sorted_rows(self) -> Vec<SparseRow> {
        let mut rows: Vec<SparseRow> = self
            .rows
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| r.into_iter().map(|(c, v)| (c, v.to_big())).collect())
            .collect();
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}

fn run_elimination(rows: &[SparseRow], unimodular: bool) -> Vec<SparseRow> {
    fn attempt<T: ElimInt>(rows: &[SparseRow], unimodular: bool) -> Option<Vec<SparseRow>> {
        let mut state = ElimState::<T>::new();
        for row in rows {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0), "row columns must increase");
            let converted = convert_row::<T>(row)?;
            if unimodular {
                state.insert_unimodular(converted)?;
            } else {
                state.insert_stripped(converted)?;
            }
        }
        Some(state.into_sorted_rows())
    }
    attempt::<i128>(rows, unimodular)
        .unwrap_or_else(|| attempt::<Int>(rows, unimodular).expect("big integer arithmetic cannot overflow"))
}

/// Row echelon for rank questions over the rationals.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<SparseRow>,
}

pub fn row_echelon(cols: usize, rows: &[SparseRow]) -> Echelon {
    Echelon { cols, rows: run_elimination(rows, false) }
}

impl Echelon {
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Reduces a rational row modulo the row space; the result has no
    /// support on pivot columns and represents the same residue class.
    pub fn reduce(&self, row: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
        let mut acc: std::collections::BTreeMap<usize, Rational> = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for prow in &self.rows {
            let col = prow[0].0;
            let Some(coeff) = acc.get(&col).cloned() else { continue };
            let factor = coeff / Rational::from_integer(prow[0].1.clone());
            for (c, v) in prow {
                let delta = &factor * Rational::from_integer(v.clone());
                let entry = acc.entry(*c).or_insert_with(Rational::zero);
                *entry -= delta;
                if entry.is_zero() {
                    acc.remove(c);
                }
            }
        }
        acc.into_iter().collect()
    }
}

/// Echelon of the integer row lattice under unimodular operations.
#[derive(Clone, Debug)]
pub struct LatticeEchelon {
    cols: usize,
    rows: Vec<SparseRow>,
}

pub fn lattice_echelon(cols: usize, rows: &[SparseRow]) -> LatticeEchelon {
    LatticeEchelon { cols, rows: run_elimination(rows, true) }
}

impl LatticeEchelon {
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn pivot_values(&self) -> Vec<Int> {
        self.rows.iter().map(|r| r[0].1.clone()).collect()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Invariant factors of the quotient by the row lattice, in divisibility
    /// order. All ones exactly when the quotient is free.
    pub fn invariant_factors(&self) -> Vec<Int> {
        if self.rows.iter().all(|r| r[0].1.magnitude().is_one()) {
            return vec![Int::from(1); self.rows.len()];
        }
        // Back-substitute the unit pivots out of every other row, then hand
        // the small residual to a dense Smith reduction.
        let mut rows = self.rows.clone();
        let unit_slots: Vec<usize> =
            (0..rows.len()).filter(|&i| rows[i][0].1.magnitude().is_one()).collect();
        for &u in unit_slots.iter().rev() {
            let (col, lead) = (rows[u][0].0, rows[u][0].1.clone());
            for i in 0..rows.len() {
                if i == u {
                    continue;
                }
                let Some(pos) = rows[i].iter().position(|&(c, _)| c == col) else { continue };
                let q = if lead.is_negative() { -rows[i][pos].1.clone() } else { rows[i][pos].1.clone() };
                let combined = linear_combine(&Int::from(1), &rows[i], &q.neg(), &rows[u])
                    .expect("big integer arithmetic cannot overflow");
                rows[i] = combined;
            }
        }
        let unit_cols: std::collections::HashSet<usize> =
            unit_slots.iter().map(|&u| rows[u][0].0).collect();
        let residual_rows: Vec<&SparseRow> = (0..rows.len())
            .filter(|i| !unit_slots.contains(i))
            .map(|i| &rows[i])
            .collect();
        let mut occupied: Vec<usize> = residual_rows
            .iter()
            .flat_map(|r| r.iter().map(|&(c, _)| c))
            .filter(|c| !unit_cols.contains(c))
            .collect();
        occupied.sort();
        occupied.dedup();
        let col_of: HashMap<usize, usize> =
            occupied.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut dense = vec![vec![Int::zero(); occupied.len()]; residual_rows.len()];
        for (i, r) in residual_rows.iter().enumerate() {
            for &(c, ref v) in r.iter() {
                if let Some(&k) = col_of.get(&c) {
                    dense[i][k] = v.clone();
                }
            }
        }
        let mut factors = vec![Int::from(1); unit_slots.len()];
        factors.extend(dense_smith(dense));
        factors
    }
}

/// Nonzero diagonal of the Smith normal form, in divisibility order.
// index loops throughout: rows t and i are read and written together
#[allow(clippy::needless_range_loop)]
fn dense_smith(mut m: Vec<Vec<Int>>) -> Vec<Int> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // move a minimal-magnitude nonzero entry of the submatrix to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !Zero::is_zero(&m[i][j])
                    && best.is_none_or(|(bi, bj)| m[i][j].magnitude() < m[bi][bj].magnitude())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if Zero::is_zero(&m[i][t]) {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                for j in t..cols {
                    let sub = &q * &m[t][j];
                    m[i][j] -= sub;
                }
                if !Zero::is_zero(&m[i][t]) {
                    m.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if Zero::is_zero(&m[t][j]) {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                for row in m.iter_mut().take(rows).skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !Zero::is_zero(&m[t][j]) {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce the divisibility chain before splitting off the pivot
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !Zero::is_zero(&m[i][j]) && !Zero::is_zero(&(&m[i][j] % &m[t][t])));
            match offender {
                None => break,
                Some((i, _)) => {
                    for j in t..cols {
                        let add = m[i][j].clone();
                        m[t][j] += add;
                    }
                }
            }
        }
        factors.push(m[t][t].abs());
        t += 1;
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(data: &[&[i64]]) -> Vec<SparseRow> {
        data.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, &v)| (c, Int::from(v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_and_pivots() {
        let e = row_echelon(3, &rows(&[&[1, 2, 0], &[2, 4, 0], &[0, 1, 1]]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivot_cols(), vec![0, 1]);
        let e = row_echelon(2, &rows(&[&[0, 0], &[3, 6]]));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.rows()[0], vec![(0, Int::from(1)), (1, Int::from(2))]);
    }

    #[test]
    fn reduction_clears_pivot_columns() {
        let e = row_echelon(3, &rows(&[&[2, 0, 3], &[0, 5, 1]]));
        let reduced = e.reduce(&[(0, Rational::from_integer(Int::from(1)))]);
        assert_eq!(reduced.len(), 1);
        assert_eq!(reduced[0].0, 2);
        assert_eq!(reduced[0].1, Rational::new(Int::from(-3), Int::from(2)));
        // rows of the span reduce to nothing
        let row: Vec<(usize, Rational)> = e.rows()[1]
            .iter()
            .map(|(c, v)| (*c, Rational::from_integer(v.clone())))
            .collect();
        assert!(e.reduce(&row).is_empty());
    }

    #[test]
    fn lattice_pivots_keep_divisors() {
        let e = lattice_echelon(1, &rows(&[&[4], &[6]]));
        assert_eq!(e.rank(), 1);
        assert_eq!(e.pivot_values(), vec![Int::from(2)]);
        assert_eq!(e.invariant_factors(), vec![Int::from(2)]);
    }

    #[test]
    fn invariant_factors_examples() {
        let e = lattice_echelon(2, &rows(&[&[2, 0], &[0, 6]]));
        assert_eq!(e.invariant_factors(), vec![Int::from(2), Int::from(6)]);
        let e = lattice_echelon(2, &rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(e.invariant_factors(), vec![Int::from(2), Int::from(4)]);
        // a primitive single row spans a direct summand despite its non-unit
        // leading entry
        let e = lattice_echelon(2, &rows(&[&[2, 1]]));
        assert_eq!(e.invariant_factors(), vec![Int::from(1)]);
    }

    #[test]
    fn mixed_unit_and_non_unit_pivots() {
        let e = lattice_echelon(3, &rows(&[&[1, 3, 5], &[0, 2, 2], &[0, 0, 4]]));
        assert_eq!(e.rank(), 3);
        let f = e.invariant_factors();
        assert_eq!(f.len(), 3);
        // the product of the factors is the index of the sublattice
        assert_eq!(f.iter().product::<Int>(), Int::from(8));
        assert!(f.windows(2).all(|w| Zero::is_zero(&(&w[1] % &w[0]))));
    }

    #[test]
    fn big_entries_fall_back_to_bignum() {
        let huge: Int = Int::from(1) << 200;
        let r: Vec<SparseRow> =
            vec![vec![(0, huge.clone()), (1, Int::from(1))], vec![(0, huge.clone() << 1), (1, Int::from(3))]];
        let e = row_echelon(2, &r);
        assert_eq!(e.rank(), 2);
        let l = lattice_echelon(2, &r);
        assert_eq!(l.rank(), 2);
        // determinant 2^200, one unimodular column pair: factors (1, 2^200)
        assert_eq!(l.invariant_factors(), vec![Int::from(1), huge]);
    }

    #[test]
    fn smith_handles_zero_and_rectangular() {
        assert!(dense_smith(vec![]).is_empty());
        assert_eq!(dense_smith(vec![vec![Int::zero(); 3]; 2]), Vec::<Int>::new());
        let f = dense_smith(vec![
            vec![Int::from(2), Int::from(4), Int::from(4)],
            vec![Int::from(-6), Int::from(6), Int::from(12)],
        ]);
        assert_eq!(f.len(), 2);
        assert!(Zero::is_zero(&(&f[1] % &f[0])));
    }
}
