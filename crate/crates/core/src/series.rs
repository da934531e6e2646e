//! Poincaré polynomials and lower central series ranks.
//!
//! The cohomology of a configuration tower with fiber ranks `α_1..α_n` has
//! Poincaré polynomial `∏(1+α_k t)`, and the fundamental group is an iterated
//! almost direct product of free groups of those ranks, so the same data
//! determines the ranks `φ_i` of the lower central series quotients through
//! the identity `∏(1-t^i)^{φ_i} = ∏(1-α_k t)`.

use std::fmt;

use num_traits::{Pow, Zero};

use crate::action::MarkedAction;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Int;

/// Dense polynomial in one variable `t`, no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![S::from_int(1)] }
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn monomial(c: S, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::from_int(0); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| S::from_int(0))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(|c| S::from_int(0) - c.clone()).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::from_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// `P(-t)`.
    pub fn substitute_neg(&self) -> Self {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { S::from_int(0) - c.clone() })
                .collect(),
        }
    }

    /// Divides by `t^k`; the `k` lowest coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Construction(format!("polynomial not divisible by t^{k}")));
        }
        Ok(Polynomial { coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag == S::from_int(1);
            if !unit || k == 0 {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}t", if unit { "" } else { " " })?,
                _ => write!(f, "{}t^{k}", if unit { "" } else { " " })?,
            }
        }
        Ok(())
    }
}

/// Power series coefficients modulo `t^{t_max+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<S: Scalar> {
    t_max: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn one(t_max: usize) -> Self {
        let mut coeffs = vec![S::from_int(0); t_max + 1];
        coeffs[0] = S::from_int(1);
        TruncatedSeries { t_max, coeffs }
    }

    pub fn from_polynomial(p: &Polynomial<S>, t_max: usize) -> Self {
        TruncatedSeries { t_max, coeffs: (0..=t_max).map(|k| p.coeff(k)).collect() }
    }

    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.t_max, rhs.t_max, "series truncated at different orders");
        let mut coeffs = vec![S::from_int(0); self.t_max + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(self.t_max + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries { t_max: self.t_max, coeffs }
    }
}

impl TruncatedSeries<Int> {
    /// Multiplies by `(1 - t^i)^e` for an arbitrary integer exponent, via the
    /// binomial series; only `⌊t_max/i⌋` terms contribute.
    pub fn mul_binomial_power(&self, i: usize, e: &Int) -> Self {
        assert!(i >= 1, "exponent of t must be positive");
        let mut factor = vec![Int::from(0); self.t_max + 1];
        let mut binom = Int::from(1);
        let mut j = 0usize;
        loop {
            let sign = if j.is_multiple_of(2) { 1 } else { -1 };
            factor[i * j] = &binom * Int::from(sign);
            j += 1;
            if i * j > self.t_max {
                break;
            }
            // C(e, j) = C(e, j-1) · (e - j + 1) / j, division exact
            binom = (binom * (e - Int::from(j as i64 - 1))).exact_div(&Int::from(j as i64));
        }
        self.mul(&TruncatedSeries { t_max: self.t_max, coeffs: factor })
    }
}

/// Möbius function; `0` on non-squarefree arguments.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1i64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Fiber ranks `α_k = |G|(k-1) + |Z| - 1` for `k = 1..=n`.
pub fn alpha_profile(action: &MarkedAction, n: usize) -> Result<Vec<u64>> {
    if action.is_sphere() {
        return Err(Error::SphereCase);
    }
    let g = action.group().order() as u64;
    let z = action.z_len() as u64;
    Ok((1..=n as u64).map(|k| g * (k - 1) + z - 1).collect())
}

/// Number of punctures of the `k`-th fiber, `α_k + 1`.
pub fn fiber_puncture_count(action: &MarkedAction, k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::Construction("fibers are indexed from 1".into()));
    }
    Ok(alpha_profile(action, k)?[k - 1] + 1)
}

/// `∏_{k=1}^n (1 + α_k t)`.
pub fn poincare_polynomial(action: &MarkedAction, n: usize) -> Result<Polynomial<Int>> {
    Ok(profile_poincare(&alpha_profile(action, n)?))
}

fn profile_poincare(profile: &[u64]) -> Polynomial<Int> {
    let mut p = Polynomial::one();
    for &a in profile {
        p = p.mul(&Polynomial::from_coeffs(vec![Int::from(1), Int::from(a)]));
    }
    p
}

/// Poincaré polynomial of the unmarked configuration space of the sphere:
/// `t^2` for `n ≤ 2`, then `t^3 ∏_{k=1}^{n-3} (1 + (k+1) t)`.
pub fn poincare_sphere(n: usize) -> Result<Polynomial<Int>> {
    match n {
        0 => Err(Error::Construction("need at least one point".into())),
        1 | 2 => Ok(Polynomial::monomial(Int::from(1), 2)),
        _ => {
            let tail = profile_poincare(&sphere_tower_profile(n));
            Ok(Polynomial::monomial(Int::from(1), 3).mul(&tail))
        }
    }
}

fn sphere_tower_profile(n: usize) -> Vec<u64> {
    (1..=(n.saturating_sub(3)) as u64).map(|k| k + 1).collect()
}

/// Shape of the fundamental group of the unmarked sphere configuration space:
/// trivial for `n ≤ 2`, otherwise a central `ℤ/2` times an iterated almost
/// direct product of free groups of the listed ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePi1 {
    pub n: usize,
    pub central_torsion: bool,
    pub tower: Vec<u64>,
}

pub fn sphere_fundamental_group(n: usize) -> Result<SpherePi1> {
    if n == 0 {
        return Err(Error::Construction("need at least one point".into()));
    }
    Ok(SpherePi1 { n, central_torsion: n >= 3, tower: sphere_tower_profile(n) })
}

/// Ranks `φ_i` of the lower central series quotients of an iterated almost
/// direct product of free groups of the given ranks, for `i = 1..=i_max`.
///
/// Panics if the defining division is not exact; it always is for honest
/// profiles, so a failure means the profile does not come from such a group.
pub fn lcs_ranks(profile: &[u64], i_max: usize) -> Vec<Int> {
    (1..=i_max as u64)
        .map(|i| {
            let mut sum = Int::from(0);
            for j in 1..=i {
                if i % j != 0 {
                    continue;
                }
                let mu = moebius(j);
                if mu == 0 {
                    continue;
                }
                let e = i / j;
                let powers: Int = profile.iter().map(|&c| Pow::pow(Int::from(c), e as u32)).sum();
                sum += Int::from(mu) * powers;
            }
            sum.exact_div(&Int::from(i))
        })
        .collect()
}

/// Outcome of checking `∏(1-t^i)^{φ_i} = ∏(1-c_k t)` modulo `t^{i_max+1}`.
#[derive(Clone, Debug)]
pub struct LcsIdentity {
    pub profile: Vec<u64>,
    pub i_max: usize,
    pub ranks: Vec<Int>,
    pub lhs: Vec<Int>,
    pub rhs: Vec<Int>,
    pub pass: bool,
}

pub fn verify_lcs_identity(profile: &[u64], i_max: usize) -> LcsIdentity {
    let ranks = lcs_ranks(profile, i_max);
    let mut lhs = TruncatedSeries::<Int>::one(i_max);
    for (i, phi) in ranks.iter().enumerate() {
        lhs = lhs.mul_binomial_power(i + 1, phi);
    }
    let mut rhs_poly = Polynomial::<Int>::one();
    for &c in profile {
        rhs_poly = rhs_poly.mul(&Polynomial::from_coeffs(vec![Int::from(1), Int::from(-(c as i64))]));
    }
    let rhs = TruncatedSeries::from_polynomial(&rhs_poly, i_max);
    let pass = lhs.coeffs() == rhs.coeffs();
    LcsIdentity {
        profile: profile.to_vec(),
        i_max,
        ranks,
        lhs: lhs.coeffs().to_vec(),
        rhs: rhs.coeffs().to_vec(),
        pass,
    }
}

/// LCS identity for a marked action at `n` strands.
pub fn lcs_identity(action: &MarkedAction, n: usize, i_max: usize) -> Result<LcsIdentity> {
    Ok(verify_lcs_identity(&alpha_profile(action, n)?, i_max))
}

/// LCS identity for the unmarked sphere at `n ≥ 3` strands, cross-checked
/// against `-P_n(-t)/t^3`: the central torsion factor does not contribute, so
/// the free tower must account for the whole series.
pub fn sphere_lcs_identity(n: usize, i_max: usize) -> Result<LcsIdentity> {
    if n < 3 {
        return Err(Error::Construction("fundamental group is trivial below 3 points".into()));
    }
    let mut report = verify_lcs_identity(&sphere_tower_profile(n), i_max);
    let from_poincare = poincare_sphere(n)?.substitute_neg().neg().shift_down(3)?;
    let expected = TruncatedSeries::from_polynomial(&from_poincare, i_max);
    report.pass = report.pass && report.rhs == expected.coeffs();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_poly(coeffs: &[i64]) -> Polynomial<Int> {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(int_poly(&[1, 4, 3]).to_string(), "1 + 4 t + 3 t^2");
        assert_eq!(int_poly(&[0, 0, 0, 1, 2]).to_string(), "t^3 + 2 t^4");
        assert_eq!(int_poly(&[0, -1, 0, 5]).to_string(), "-t + 5 t^3");
        assert_eq!(Polynomial::<Int>::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = int_poly(&[1, 1]);
        let q = int_poly(&[1, -1]);
        assert_eq!(p.mul(&q), int_poly(&[1, 0, -1]));
        assert_eq!(p.add(&q), int_poly(&[2]));
        assert_eq!(p.substitute_neg(), q);
        assert_eq!(int_poly(&[0, 0, 3, 1]).shift_down(2).unwrap(), int_poly(&[3, 1]));
        assert!(int_poly(&[0, 1]).shift_down(2).is_err());
    }

    #[test]
    fn moebius_values() {
        let values: Vec<i64> = (1..=12).map(moebius).collect();
        assert_eq!(values, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn binomial_power_series() {
        let s = TruncatedSeries::<Int>::one(2)
            .mul_binomial_power(1, &Int::from(4))
            .mul_binomial_power(2, &Int::from(3));
        assert_eq!(s.coeffs(), &[Int::from(1), Int::from(-4), Int::from(3)]);
    }

    #[test]
    fn alpha_profiles() {
        let a = MarkedAction::trivial(1).unwrap();
        assert_eq!(alpha_profile(&a, 3).unwrap(), vec![0, 1, 2]);
        let b = MarkedAction::cyclic(2, 0).unwrap();
        assert_eq!(alpha_profile(&b, 2).unwrap(), vec![1, 3]);
        assert_eq!(fiber_puncture_count(&b, 2).unwrap(), 4);
        let c = MarkedAction::dihedral(2, 0).unwrap();
        assert_eq!(poincare_polynomial(&c, 2).unwrap(), int_poly(&[1, 14, 45]));
        assert!(alpha_profile(&MarkedAction::sphere_case(), 2).is_err());
    }

    #[test]
    fn lcs_rank_values() {
        let to_i64 = |v: Vec<Int>| -> Vec<i64> { v.iter().map(|x| i64::try_from(x).unwrap()).collect() };
        assert_eq!(to_i64(lcs_ranks(&[2], 3)), vec![2, 1, 2]);
        assert_eq!(to_i64(lcs_ranks(&[1, 3], 3)), vec![4, 3, 8]);
        assert_eq!(to_i64(lcs_ranks(&[0, 1, 2], 2)), vec![3, 1]);
    }

    #[test]
    fn lcs_identity_holds() {
        let r = verify_lcs_identity(&[1, 3], 12);
        assert!(r.pass);
        let a = MarkedAction::cyclic(3, 0).unwrap();
        assert!(lcs_identity(&a, 3, 12).unwrap().pass);
    }

    #[test]
    fn sphere_series() {
        let shapes: Vec<String> = (1..=4).map(|n| poincare_sphere(n).unwrap().to_string()).collect();
        assert_eq!(shapes, vec!["t^2", "t^2", "t^3", "t^3 + 2 t^4"]);
    }

    #[test]
    fn sphere_fundamental_groups() {
        assert_eq!(sphere_fundamental_group(2).unwrap().tower, Vec::<u64>::new());
        assert!(!sphere_fundamental_group(2).unwrap().central_torsion);
        let p = sphere_fundamental_group(6).unwrap();
        assert!(p.central_torsion);
        assert_eq!(p.tower, vec![2, 3, 4]);
    }

    #[test]
    fn sphere_lcs_identity_holds() {
        for n in 3..=6 {
            assert!(sphere_lcs_identity(n, 12).unwrap().pass, "n = {n}");
        }
        assert!(sphere_lcs_identity(2, 12).is_err());
    }
}
