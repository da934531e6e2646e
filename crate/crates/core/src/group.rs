//! Finite groups as explicit multiplication tables.

use std::fmt;

use crate::error::{Error, Result};

/// Element of a finite group, an index into its multiplication table.
///
/// Index 0 is always the identity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElem(pub usize);

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    name: String,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking the axioms.
    ///
    /// `mult[a][b]` is the index of the product `a·b`; index 0 must be the
    /// identity.
    pub fn from_mult_table(name: impl Into<String>, mult: Vec<Vec<usize>>) -> Result<Self> {
        let name = name.into();
        let violations = table_violations(&mult);
        if let Some(v) = violations.first() {
            return Err(Error::Construction(format!("group `{name}`: {v}")));
        }
        let inv: Vec<usize> = mult
            .iter()
            .map(|row| row.iter().position(|&p| p == 0).unwrap_or(usize::MAX))
            .collect();
        Ok(FiniteGroup { mult, inv, name })
    }

    /// Builds a group from a closed set of permutations acting on `0..degree`.
    ///
    /// The set must contain the identity and be closed under composition; the
    /// permutations are sorted so element order is deterministic.
    pub fn from_permutations(
        name: impl Into<String>,
        mut perms: Vec<Vec<usize>>,
        degree: usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        let name = name.into();
        perms.sort();
        perms.dedup();
        for p in &perms {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Construction(format!("group `{name}`: not a permutation of 0..{degree}")));
            }
        }
        // the identity is lexicographically least among permutations
        if perms.first().map(|p| p.iter().enumerate().any(|(i, &x)| i != x)) != Some(false) {
            return Err(Error::Construction(format!("group `{name}`: identity permutation missing")));
        }
        let index_of = |q: &[usize]| perms.binary_search_by(|p| p.as_slice().cmp(q));
        let n = perms.len();
        let mut mult = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                // composition acts left to right on points: (a·b)(x) = a(b(x))
                let prod: Vec<usize> = (0..degree).map(|x| perms[a][perms[b][x]]).collect();
                mult[a][b] = index_of(&prod).map_err(|_| {
                    Error::Construction(format!("group `{name}`: permutation set not closed"))
                })?;
            }
        }
        Ok((Self::from_mult_table(name, mult)?, perms))
    }

    /// The cyclic group of order `m`, elements indexed by exponent.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Construction("cyclic group needs order at least 1".into()));
        }
        let mult = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        Self::from_mult_table(format!("cyclic:{m}"), mult)
    }

    /// The dihedral group of order `2m`.
    ///
    /// Element `e·m + a` is the rotation `ρ^a` for `e = 0` and the involution
    /// `ρ^a τ` for `e = 1`, where `τρτ = ρ⁻¹`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Construction(
                "dihedral group needs m at least 2 (use cyclic:2 for order 2)".into(),
            ));
        }
        let idx = |e: usize, a: usize| e * m + a;
        let mut mult = vec![vec![0usize; 2 * m]; 2 * m];
        for e1 in 0..2 {
            for a1 in 0..m {
                for e2 in 0..2 {
                    for a2 in 0..m {
                        // (ρ^{a1}τ^{e1})(ρ^{a2}τ^{e2}) twists the second exponent
                        let a = if e1 == 0 { a1 + a2 } else { a1 + m - a2 } % m;
                        mult[idx(e1, a1)][idx(e2, a2)] = idx(e1 ^ e2, a);
                    }
                }
            }
        }
        Self::from_mult_table(format!("dihedral:{m}"), mult)
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn id(&self) -> GroupElem {
        GroupElem(0)
    }

    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        GroupElem(self.mult[a.0][b.0])
    }

    pub fn inv(&self, a: GroupElem) -> GroupElem {
        GroupElem(self.inv[a.0])
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        (0..self.order()).map(GroupElem)
    }

    pub fn element_order(&self, a: GroupElem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x.0 != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// True when some element generates the whole group.
    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|a| self.element_order(a) == self.order())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn element_name(&self, a: GroupElem) -> String {
        format!("g{}", a.0)
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Re-checks the group axioms on the stored table.
    pub fn axiom_violations(&self) -> Vec<String> {
        table_violations(&self.mult)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

fn table_violations(mult: &[Vec<usize>]) -> Vec<String> {
    let n = mult.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push("empty multiplication table".to_string());
        return out;
    }
    for (a, row) in mult.iter().enumerate() {
        if row.len() != n {
            out.push(format!("row {a} has length {} instead of {n}", row.len()));
            return out;
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            out.push(format!("row {a} contains out-of-range index {x}"));
            return out;
        }
    }
    for (a, row) in mult.iter().enumerate() {
        if mult[0][a] != a || row[0] != a {
            out.push(format!("index 0 is not an identity at {a}"));
        }
    }
    for (a, row) in mult.iter().enumerate() {
        if !(0..n).any(|b| row[b] == 0 && mult[b][a] == 0) {
            out.push(format!("element {a} has no two-sided inverse"));
        }
    }
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                    out.push(format!("associativity fails at ({a},{b},{c})"));
                    break 'outer;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_axioms_and_orders() {
        for m in 1..=12 {
            let g = FiniteGroup::cyclic(m).unwrap();
            assert!(g.axiom_violations().is_empty());
            assert_eq!(g.order(), m);
            assert!(g.is_cyclic());
            assert_eq!(g.element_order(GroupElem(1 % m)), if m == 1 { 1 } else { m });
        }
    }

    #[test]
    fn dihedral_axioms() {
        for m in 2..=12 {
            let g = FiniteGroup::dihedral(m).unwrap();
            assert!(g.axiom_violations().is_empty());
            assert_eq!(g.order(), 2 * m);
            // every flipped element is an involution
            for a in 0..m {
                assert_eq!(g.element_order(GroupElem(m + a)), 2);
            }
            assert!(!g.is_cyclic());
        }
    }

    #[test]
    fn dihedral_relation() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let rho = GroupElem(1);
        let tau = GroupElem(5);
        // τ ρ τ = ρ⁻¹
        let lhs = g.mul(g.mul(tau, rho), tau);
        assert_eq!(lhs, g.inv(rho));
    }

    #[test]
    fn permutation_group_s3() {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let (g, _) = FiniteGroup::from_permutations("s3", perms, 3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.axiom_violations().is_empty());
        assert!(!g.is_cyclic());
    }

    #[test]
    fn unclosed_permutation_set_rejected() {
        let perms = vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 0, 2]];
        assert!(FiniteGroup::from_permutations("bad", perms, 3).is_err());
    }

    #[test]
    fn broken_table_rejected() {
        // swap one entry of the cyclic table so associativity breaks
        let mut mult: Vec<Vec<usize>> = (0..3usize)
            .map(|a| (0..3).map(|b| (a + b) % 3).collect())
            .collect();
        mult[1][2] = 1;
        assert!(FiniteGroup::from_mult_table("broken", mult).is_err());
    }
}
