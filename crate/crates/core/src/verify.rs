//! Independent verification of the spanning basis.
//!
//! The straightening rules in [`crate::algebra`] claim that monomials with
//! pairwise distinct second strands form a basis of each graded piece. This
//! module re-derives that claim from the presentation alone: it assembles the
//! degree-`d` component of the relation ideal as an integer matrix, reduces
//! it exactly, and compares the quotient against the predicted dimension.
//! Nothing here calls the straightener, so agreement between the two is
//! evidence, not circularity.
//!
//! Columns are ordered so that a monomial whose second strands repeat sorts
//! before any monomial it can rewrite into. Relator rows then lead on
//! repeated-strand columns, and the pivot set of the echelon must avoid the
//! claimed basis entirely; a pivot landing on a basis monomial is a direct
//! counterexample to linear independence.

use std::collections::HashMap;

use num_traits::One;

use crate::algebra::{self, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, LatticeEchelon, SparseRow};
use crate::presentation::Presentation;
use crate::{Int, Rational};

/// Caps on matrix size; exceeding either aborts before assembly.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_columns: usize,
    pub max_rows: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_columns: 200_000, max_rows: 400_000 }
    }
}

/// How the degree-`d` relation rows are produced.
///
/// `Direct` wedges every relator with every free monomial of degree `d-2`.
/// `Iterated` wedges an echelon basis of the degree-`d-1` component with the
/// generators; both span the same space, so equal ranks are a cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowAssembly {
    Direct,
    Iterated,
}

/// The degree-`d` relation matrix in echelon form, with its column book-keeping.
pub struct DegreeMatrix {
    degree: usize,
    columns: Vec<Monomial>,
    col_of: HashMap<Monomial, usize>,
    echelon: Echelon,
    lattice: Option<LatticeEchelon>,
}

/// `C(n, k)` capped at `u128::MAX`.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let Some(next) = acc.checked_mul((n - i) as u128) else { return u128::MAX };
        acc = next / (i as u128 + 1);
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Merges two sorted disjoint factor lists, returning the sign of the sort
/// permutation; `None` when they share a factor.
fn merge_factors(left: &[usize], right: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    let mut sign = 1i64;
    while i < left.len() || j < right.len() {
        if j == right.len() || (i < left.len() && left[i] < right[j]) {
            out.push(left[i]);
            i += 1;
        } else if i == left.len() || right[j] < left[i] {
            // every remaining left factor jumps over this right factor
            if (left.len() - i) % 2 == 1 {
                sign = -sign;
            }
            out.push(right[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, sign))
}

/// Key under which straightening strictly descends: the multiset of second
/// strands (sorted decreasingly), tie-broken by the index vector.
fn reduction_key(pres: &Presentation, m: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut strands: Vec<usize> = m.iter().map(|&i| pres.generator(i).second_strand()).collect();
    strands.sort_unstable_by(|a, b| b.cmp(a));
    (strands, m.to_vec())
}

fn column_order(pres: &Presentation, degree: usize, budget: &Budget) -> Result<Vec<Monomial>> {
    let count = binomial(pres.generator_count(), degree);
    if count > budget.max_columns as u128 {
        return Err(Error::BudgetExceeded {
            degree,
            columns: count,
            rows: 0,
            max_columns: budget.max_columns,
            max_rows: budget.max_rows,
        });
    }
    let mut cols: Vec<Vec<usize>> = combinations(pres.generator_count(), degree);
    cols.sort_by_key(|c| std::cmp::Reverse(reduction_key(pres, c)));
    Ok(cols.into_iter().map(Monomial).collect())
}

fn direct_rows(
    pres: &Presentation,
    degree: usize,
    col_of: &HashMap<Monomial, usize>,
    budget: &Budget,
) -> Result<Vec<SparseRow>> {
    let estimate =
        pres.relators().len() as u128 * binomial(pres.generator_count(), degree - 2);
    if estimate > budget.max_rows as u128 {
        return Err(Error::BudgetExceeded {
            degree,
            columns: col_of.len() as u128,
            rows: estimate,
            max_columns: budget.max_columns,
            max_rows: budget.max_rows,
        });
    }
    let mut rows = Vec::new();
    for cofactor in combinations(pres.generator_count(), degree - 2) {
        for relator in pres.relators() {
            let mut row: Vec<(usize, Int)> = Vec::with_capacity(relator.terms.len());
            for &(c, pair) in &relator.terms {
                let Some((merged, sign)) = merge_factors(&pair, &cofactor) else { continue };
                row.push((col_of[&Monomial(merged)], Int::from(c * sign)));
            }
            if row.is_empty() {
                continue;
            }
            row.sort_by_key(|&(c, _)| c);
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            rows.push(row);
        }
    }
    Ok(rows)
}

fn iterated_rows(
    pres: &Presentation,
    previous: &DegreeMatrix,
    degree: usize,
    col_of: &HashMap<Monomial, usize>,
    budget: &Budget,
) -> Result<Vec<SparseRow>> {
    let estimate = previous.echelon.rank() as u128 * pres.generator_count() as u128;
    if estimate > budget.max_rows as u128 {
        return Err(Error::BudgetExceeded {
            degree,
            columns: col_of.len() as u128,
            rows: estimate,
            max_columns: budget.max_columns,
            max_rows: budget.max_rows,
        });
    }
    let mut rows = Vec::new();
    for prev_row in previous.echelon.rows() {
        for g in 0..pres.generator_count() {
            let mut row: Vec<(usize, Int)> = Vec::new();
            for &(col, ref v) in prev_row {
                let factors = &previous.columns[col].0;
                let Some((merged, sign)) = merge_factors(factors, &[g]) else { continue };
                row.push((col_of[&Monomial(merged)], if sign < 0 { -v.clone() } else { v.clone() }));
            }
            if row.is_empty() {
                continue;
            }
            row.sort_by_key(|&(c, _)| c);
            rows.push(row);
        }
    }
    Ok(rows)
}

impl DegreeMatrix {
    /// Assembles and reduces the degree-`degree` relation matrix. With
    /// `Iterated` assembly the chain is built up from degree 2 internally.
    pub fn build(
        pres: &Presentation,
        degree: usize,
        assembly: RowAssembly,
        budget: &Budget,
        want_lattice: bool,
    ) -> Result<DegreeMatrix> {
        let mut prev = None;
        if assembly == RowAssembly::Iterated && degree >= 3 {
            prev = Some(Self::build(pres, degree - 1, assembly, budget, false)?);
        }
        Self::build_step(pres, degree, assembly, budget, want_lattice, prev.as_ref())
    }

    fn build_step(
        pres: &Presentation,
        degree: usize,
        assembly: RowAssembly,
        budget: &Budget,
        want_lattice: bool,
        previous: Option<&DegreeMatrix>,
    ) -> Result<DegreeMatrix> {
        let columns = column_order(pres, degree, budget)?;
        let col_of: HashMap<Monomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let rows = if degree < 2 {
            Vec::new()
        } else {
            match (assembly, previous) {
                (RowAssembly::Direct, _) => direct_rows(pres, degree, &col_of, budget)?,
                (RowAssembly::Iterated, Some(prev)) if degree >= 3 => {
                    iterated_rows(pres, prev, degree, &col_of, budget)?
                }
                (RowAssembly::Iterated, _) => direct_rows(pres, degree, &col_of, budget)?,
            }
        };
        let echelon = linalg::row_echelon(columns.len(), &rows);
        let lattice = want_lattice.then(|| linalg::lattice_echelon(columns.len(), &rows));
        if let Some(l) = &lattice {
            debug_assert_eq!(l.rank(), echelon.rank());
        }
        Ok(DegreeMatrix { degree, columns, col_of, echelon, lattice })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomial_count(&self) -> usize {
        self.columns.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.columns.len() - self.echelon.rank()
    }

    pub fn pivot_monomials(&self) -> Vec<&Monomial> {
        self.echelon.pivot_cols().into_iter().map(|c| &self.columns[c]).collect()
    }

    /// Invariant factors of the lattice quotient, when the lattice reduction
    /// was requested at build time.
    pub fn invariant_factors(&self) -> Option<Vec<Int>> {
        self.lattice.as_ref().map(|l| l.invariant_factors())
    }

    /// Coordinates of a homogeneous element against the degree-`d` basis
    /// monomials (the empty vector above the top degree). Fails when the
    /// reduced representative has support off the basis, which is exactly a
    /// linear-independence counterexample.
    pub fn coordinates(&self, pres: &Presentation, x: &Element<Rational>) -> Result<Vec<Rational>> {
        let reduced = self.reduce_element(pres, x)?;
        let basis = if self.degree <= pres.n() {
            algebra::basis(pres, self.degree)?
        } else {
            Vec::new()
        };
        let pos: HashMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coords = vec![<Rational as num_traits::Zero>::zero(); basis.len()];
        for (m, c) in reduced.terms() {
            match pos.get(m) {
                Some(&i) => coords[i] = c.clone(),
                None => {
                    return Err(Error::BasisFailure(format!(
                        "degree-{} reduction keeps support off the basis at {}",
                        self.degree,
                        algebra::render_element(
                            pres,
                            &Element::from_terms(pres, [(c.clone(), m.clone())])?
                        )
                    )));
                }
            }
        }
        Ok(coords)
    }

    /// Canonical representative of a homogeneous element modulo the relation
    /// rows. Independent of the straightener; with pivots in their expected
    /// places the support lands on basis monomials.
    pub fn reduce_element(
        &self,
        pres: &Presentation,
        x: &Element<Rational>,
    ) -> Result<Element<Rational>> {
        if x.pres_id() != pres.id() {
            return Err(Error::MixedPresentations);
        }
        let Some(degree) = x.degree()? else { return Ok(x.clone()) };
        if degree != self.degree {
            return Err(Error::Construction(format!(
                "element of degree {degree} against a degree-{} matrix",
                self.degree
            )));
        }
        let mut row: Vec<(usize, Rational)> =
            x.terms().map(|(m, c)| (self.col_of[m], c.clone())).collect();
        row.sort_by_key(|&(c, _)| c);
        let reduced = self.echelon.reduce(&row);
        Element::from_terms(
            pres,
            reduced.into_iter().map(|(col, v)| (v, self.columns[col].clone())),
        )
    }
}

/// Dimension of the degree-`d` quotient piece, computed from the relation
/// matrix alone.
pub fn quotient_dim(pres: &Presentation, degree: usize, budget: &Budget) -> Result<usize> {
    Ok(DegreeMatrix::build(pres, degree, RowAssembly::Direct, budget, false)?.quotient_dim())
}

/// Invariant factors of the degree-`d` relation lattice; all 1 certifies that
/// the quotient piece is a free abelian group.
pub fn integral_invariants(pres: &Presentation, degree: usize, budget: &Budget) -> Result<Vec<Int>> {
    let dm = DegreeMatrix::build(pres, degree, RowAssembly::Direct, budget, true)?;
    Ok(dm.invariant_factors().expect("lattice reduction was requested"))
}

/// Basis coordinates of a raw product of generators, via matrix reduction.
/// The reference point for the straightened product.
pub fn reduce_in_quotient(
    pres: &Presentation,
    factors: &[usize],
    budget: &Budget,
) -> Result<Vec<Rational>> {
    for &f in factors {
        if f >= pres.generator_count() {
            return Err(Error::Construction(format!("generator index {f} out of range")));
        }
    }
    let dm = DegreeMatrix::build(pres, factors.len(), RowAssembly::Direct, budget, false)?;
    let mut sorted = factors.to_vec();
    let element = match algebra::sort_factors(&mut sorted) {
        None => Element::zero(pres),
        Some(sign) => Element::from_terms(
            pres,
            [(Rational::from_integer(Int::from(sign)), Monomial(sorted))],
        )?,
    };
    dm.coordinates(pres, &element)
}

/// Verification outcome for one graded piece.
#[derive(Clone, Debug)]
pub struct DegreeCheck {
    pub degree: usize,
    pub free_monomials: usize,
    pub ideal_rank: usize,
    pub quotient_dim: usize,
    pub expected_dim: Int,
    pub pivots_avoid_basis: bool,
    pub invariant_factors: Option<Vec<Int>>,
    pub pass: bool,
}

/// Verification outcome across all degrees `0 ..= n`.
#[derive(Clone, Debug)]
pub struct BasisCheck {
    pub degrees: Vec<DegreeCheck>,
    pub pass: bool,
}

/// Checks, degree by degree, that the quotient by the relation rows has the
/// predicted dimension and that no pivot lands on a claimed basis monomial.
/// With `want_invariants` the integer structure is reduced as well; all
/// invariant factors must be 1 for the graded piece to be a free lattice on
/// the basis.
pub fn check_basis(
    pres: &Presentation,
    max_degree: usize,
    assembly: RowAssembly,
    budget: &Budget,
    want_invariants: bool,
) -> Result<BasisCheck> {
    let mut degrees = Vec::new();
    let mut pass = true;
    let mut prev: Option<DegreeMatrix> = None;
    for degree in 0..=max_degree {
        let dm = DegreeMatrix::build_step(
            pres,
            degree,
            assembly,
            budget,
            want_invariants,
            prev.as_ref(),
        )?;
        let expected_dim = algebra::dimension(pres, degree);
        let pivots_avoid_basis =
            dm.pivot_monomials().into_iter().all(|m| !algebra::is_basis_monomial(pres, m));
        let invariant_factors = dm.invariant_factors();
        let ok = Int::from(dm.quotient_dim() as u64) == expected_dim
            && pivots_avoid_basis
            && invariant_factors
                .as_ref()
                .is_none_or(|f| f.iter().all(|v| v.magnitude().is_one()));
        pass &= ok;
        degrees.push(DegreeCheck {
            degree,
            free_monomials: dm.monomial_count(),
            ideal_rank: dm.rank(),
            quotient_dim: dm.quotient_dim(),
            expected_dim,
            pivots_avoid_basis,
            invariant_factors,
            pass: ok,
        });
        prev = Some(dm);
    }
    Ok(BasisCheck { degrees, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::MarkedAction;
    use crate::algebra::{to_rational, wedge};
    use num_traits::One;

    fn pres(spec: &str, n: usize) -> Presentation {
        Presentation::new(MarkedAction::parse(spec).unwrap(), n).unwrap()
    }

    #[test]
    fn small_configurations_have_expected_quotients() {
        for (spec, n) in [("trivial:1", 3), ("trivial:2", 3), ("cyclic:2", 3), ("cyclic:3", 2)] {
            let p = pres(spec, n);
            let check = check_basis(&p, n, RowAssembly::Direct, &Budget::default(), true).unwrap();
            assert!(check.pass, "{spec} n={n}: {:?}", check.degrees);
            for d in &check.degrees {
                assert!(d.invariant_factors.as_ref().unwrap().iter().all(Int::is_one));
            }
        }
    }

    #[test]
    fn quotient_dimension_examples() {
        let b = Budget::default();
        let p = pres("cyclic:2", 2);
        assert_eq!(quotient_dim(&p, 2, &b).unwrap(), 3);
        assert_eq!(quotient_dim(&p, 1, &b).unwrap(), p.generator_count());
        let p = pres("trivial:1", 3);
        assert_eq!(quotient_dim(&p, 2, &b).unwrap(), 2);
        // degrees beyond the strand count collapse entirely
        let p = pres("cyclic:2", 2);
        assert_eq!(quotient_dim(&p, 3, &b).unwrap(), 0);
    }

    #[test]
    fn integral_invariant_examples() {
        let b = Budget::default();
        let p = pres("cyclic:2", 2);
        let f = integral_invariants(&p, 2, &b).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.iter().all(Int::is_one));
        assert!(integral_invariants(&p, 1, &b).unwrap().is_empty());
        let p = pres("trivial:1", 3);
        assert!(integral_invariants(&p, 2, &b).unwrap().iter().all(Int::is_one));
    }

    #[test]
    fn quotient_coordinates_of_products() {
        let b = Budget::default();
        let p = pres("cyclic:2", 2);
        // basis of degree 2: [0,1], [0,2], [0,3]
        let coords = reduce_in_quotient(&p, &[1, 2], &b).unwrap();
        let q = |v: i64| Rational::from_integer(Int::from(v));
        assert_eq!(coords, vec![q(-1), q(1), q(0)]);
        // a basis monomial maps to its unit coordinate vector
        assert_eq!(reduce_in_quotient(&p, &[0, 2], &b).unwrap(), vec![q(0), q(1), q(0)]);
        // swapped factor order flips the sign
        assert_eq!(reduce_in_quotient(&p, &[2, 0], &b).unwrap(), vec![q(0), q(-1), q(0)]);
        // top degree exceeded: the empty coordinate vector
        assert_eq!(reduce_in_quotient(&p, &[0, 1, 2], &b).unwrap(), Vec::<Rational>::new());
        // duplicated factor: the zero product
        assert_eq!(reduce_in_quotient(&p, &[1, 1], &b).unwrap(), vec![q(0); 3]);
    }

    #[test]
    fn check_basis_matches_known_dim_sequences() {
        let p = pres("cyclic:3", 2);
        let check = check_basis(&p, 2, RowAssembly::Direct, &Budget::default(), false).unwrap();
        let dims: Vec<usize> = check.degrees.iter().map(|d| d.quotient_dim).collect();
        assert_eq!(dims, vec![1, 5, 4]);
        assert!(check.pass);
        let p = pres("trivial:1", 4);
        let check = check_basis(&p, 3, RowAssembly::Direct, &Budget::default(), false).unwrap();
        let dims: Vec<usize> = check.degrees.iter().map(|d| d.quotient_dim).collect();
        assert_eq!(dims, vec![1, 6, 11, 6]);
        assert!(check.pass);
    }

    #[test]
    fn direct_and_iterated_ranks_agree() {
        for (spec, n) in [("trivial:3", 3), ("cyclic:2", 3)] {
            let p = pres(spec, n);
            for d in 2..=n {
                let direct =
                    DegreeMatrix::build(&p, d, RowAssembly::Direct, &Budget::default(), false)
                        .unwrap();
                let iterated =
                    DegreeMatrix::build(&p, d, RowAssembly::Iterated, &Budget::default(), false)
                        .unwrap();
                assert_eq!(direct.rank(), iterated.rank(), "{spec} degree {d}");
            }
        }
    }

    #[test]
    fn reduction_agrees_with_straightening() {
        let p = pres("cyclic:2", 2);
        let dm = DegreeMatrix::build(&p, 2, RowAssembly::Direct, &Budget::default(), false).unwrap();
        for a in 0..p.generator_count() {
            for b in 0..p.generator_count() {
                let straightened = to_rational(&wedge(
                    &p,
                    &Element::generator(&p, a),
                    &Element::generator(&p, b),
                )
                .unwrap());
                let free = algebra::free_wedge(
                    &p,
                    &to_rational(&Element::generator(&p, a)),
                    &to_rational(&Element::generator(&p, b)),
                )
                .unwrap();
                let reduced = dm.reduce_element(&p, &free).unwrap();
                assert_eq!(reduced, straightened, "generators {a}, {b}");
            }
        }
    }

    #[test]
    fn budget_violations_are_reported_before_assembly() {
        let p = pres("cyclic:2", 3);
        let tiny = Budget { max_columns: 10, max_rows: 400_000 };
        match DegreeMatrix::build(&p, 2, RowAssembly::Direct, &tiny, false) {
            Err(Error::BudgetExceeded { degree: 2, columns, .. }) => {
                assert_eq!(columns, binomial(p.generator_count(), 2));
            }
            other => panic!("expected a budget error, got {:?}", other.map(|_| ())),
        }
        let tiny = Budget { max_columns: 200_000, max_rows: 3 };
        assert!(matches!(
            DegreeMatrix::build(&p, 2, RowAssembly::Direct, &tiny, false),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn binomial_and_combinations_agree() {
        for n in 0..10 {
            for k in 0..=n {
                assert_eq!(combinations(n, k).len() as u128, binomial(n, k));
            }
        }
        assert!(combinations(4, 2).windows(2).all(|w| w[0] < w[1]));
        assert_eq!(binomial(5, 7), 0);
    }

    #[test]
    fn merge_factor_signs() {
        assert_eq!(merge_factors(&[1, 3], &[2]), Some((vec![1, 2, 3], -1)));
        assert_eq!(merge_factors(&[1, 2], &[3]), Some((vec![1, 2, 3], 1)));
        assert_eq!(merge_factors(&[2, 3], &[0]), Some((vec![0, 2, 3], 1)));
        assert_eq!(merge_factors(&[1, 3], &[3]), None);
        assert_eq!(merge_factors(&[], &[5]), Some((vec![5], 1)));
    }
}
