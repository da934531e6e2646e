//! Finite group actions on the sphere, recorded on a marked point set.
//!
//! A `MarkedAction` stores a finite group, a finite set `Z` of labeled points
//! closed under the action, the permutation action itself, and for every
//! non-identity element its two fixed points. The marked set always contains
//! every point with non-trivial stabilizer, plus optional free orbits.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElem};
use crate::polyhedron;

pub const INFINITY_LABEL: &str = "∞";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    Trivial,
    Cyclic { m: usize },
    Dihedral { m: usize },
    Tetrahedral,
    Octahedral,
    Icosahedral,
    Sphere,
}

/// Which Platonic rotation group to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solid {
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

#[derive(Clone, Debug)]
pub struct MarkedAction {
    group: FiniteGroup,
    kind: ActionKind,
    descriptor: String,
    z_labels: Vec<String>,
    /// `act[g][p]` is the image point of `p` under element `g`.
    act: Vec<Vec<usize>>,
    /// Two fixed points per non-identity element, `None` at the identity.
    fixed_pairs: Vec<Option<(usize, usize)>>,
    p_infinity: Option<usize>,
    sphere: bool,
}

/// One violated invariant found by [`MarkedAction::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Group(String),
    NotAPermutation { g: usize },
    IdentityMoves { p: usize },
    NotCompatible { g: usize, h: usize, p: usize },
    FixedSetWrong { g: usize, fixed: Vec<usize>, declared: Option<(usize, usize)> },
    IrregularCount { found: usize, expected: usize },
    IrregularOrbits { found: usize, expected: usize },
    BasepointMissing,
    SphereInconsistent(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Group(s) => write!(f, "group axioms: {s}"),
            Violation::NotAPermutation { g } => write!(f, "element g{g} does not permute Z"),
            Violation::IdentityMoves { p } => write!(f, "identity moves point {p}"),
            Violation::NotCompatible { g, h, p } => {
                write!(f, "action incompatible with multiplication at (g{g}, g{h}, point {p})")
            }
            Violation::FixedSetWrong { g, fixed, declared } => write!(
                f,
                "element g{g} fixes {fixed:?} in Z but declares {declared:?}; \
                 every non-identity element must fix exactly its two declared points"
            ),
            Violation::IrregularCount { found, expected } => {
                write!(f, "{found} points have non-trivial stabilizer, expected {expected}")
            }
            Violation::IrregularOrbits { found, expected } => {
                write!(f, "irregular points form {found} orbits, expected {expected}")
            }
            Violation::BasepointMissing => write!(f, "no valid distinguished point"),
            Violation::SphereInconsistent(s) => write!(f, "sphere flag: {s}"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "- {v}")?;
            }
            Ok(())
        }
    }
}

impl MarkedAction {
    /// Cyclic group of order `m` fixing the two poles, `m = 1` giving the
    /// trivial group with `Z = {∞}`. Extra orbits are free orbits of size `m`.
    pub fn cyclic(m: usize, extra_orbits: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Construction("cyclic order must be at least 1".into()));
        }
        let group = FiniteGroup::cyclic(m)?;
        let mut z_labels: Vec<String> = if m == 1 {
            vec![INFINITY_LABEL.to_string()]
        } else {
            vec!["0".to_string(), INFINITY_LABEL.to_string()]
        };
        let base = z_labels.len();
        push_free_orbit_labels(&mut z_labels, extra_orbits, m);
        let act = (0..m)
            .map(|a| {
                let mut row: Vec<usize> = (0..base).collect();
                for t in 0..extra_orbits {
                    for k in 0..m {
                        row.push(base + t * m + (a + k) % m);
                    }
                }
                row
            })
            .collect();
        let fixed_pairs = (0..m).map(|a| (a != 0).then_some((0, 1))).collect();
        Ok(MarkedAction {
            group,
            kind: if m == 1 { ActionKind::Cyclic { m: 1 } } else { ActionKind::Cyclic { m } },
            descriptor: descriptor(&format!("cyclic:{m}"), extra_orbits),
            z_labels,
            act,
            fixed_pairs,
            p_infinity: Some(if m == 1 { 0 } else { 1 }),
            sphere: false,
        })
    }

    /// Dihedral group of order `2m` (`m ≥ 2`): rotations about the polar axis
    /// plus `m` half-turns about equatorial axes. The minimal marked set is
    /// the two poles and the `2m`-th roots of unity, labeled `μ0..μ(2m-1)`,
    /// which split into the even-exponent and odd-exponent orbits.
    pub fn dihedral(m: usize, extra_orbits: usize) -> Result<Self> {
        let group = FiniteGroup::dihedral(m)?;
        let order = 2 * m;
        let mut z_labels = vec!["0".to_string(), INFINITY_LABEL.to_string()];
        for k in 0..order {
            z_labels.push(format!("μ{k}"));
        }
        let base = z_labels.len();
        push_free_orbit_labels(&mut z_labels, extra_orbits, order);
        let mut act = Vec::with_capacity(order);
        for e in 0..2 {
            for a in 0..m {
                let mut row = vec![0usize; 2];
                if e == 0 {
                    row[0] = 0;
                    row[1] = 1;
                } else {
                    row[0] = 1;
                    row[1] = 0;
                }
                for k in 0..order {
                    // ρ^a: μ_k ↦ μ_{k+2a};  ρ^a τ: μ_k ↦ μ_{2a-k}
                    let img = if e == 0 { (k + 2 * a) % order } else { (2 * a + 2 * order - k) % order };
                    row.push(2 + img);
                }
                let g = GroupElem(e * m + a);
                for t in 0..extra_orbits {
                    for k in 0..order {
                        row.push(base + t * order + group.mul(g, GroupElem(k)).0);
                    }
                }
                act.push(row);
            }
        }
        let mut fixed_pairs = vec![None; order];
        fixed_pairs[1..m].fill(Some((0, 1)));
        for a in 0..m {
            // ρ^a τ fixes the antipodal equatorial pair μ_a, μ_{a+m}
            fixed_pairs[m + a] = Some((2 + a, 2 + a + m));
        }
        Ok(MarkedAction {
            group,
            kind: ActionKind::Dihedral { m },
            descriptor: descriptor(&format!("dihedral:{m}"), extra_orbits),
            z_labels,
            act,
            fixed_pairs,
            p_infinity: Some(1),
            sphere: false,
        })
    }

    /// Rotation group of a Platonic solid acting on its vertices, edge
    /// midpoints and face centers.
    pub fn platonic(solid: Solid, extra_orbits: usize) -> Result<Self> {
        let (poly, kind, name) = match solid {
            Solid::Tetrahedral => (polyhedron::tetrahedron(), ActionKind::Tetrahedral, "tetrahedral"),
            Solid::Octahedral => (polyhedron::octahedron(), ActionKind::Octahedral, "octahedral"),
            Solid::Icosahedral => (polyhedron::icosahedron(), ActionKind::Icosahedral, "icosahedral"),
        };
        let rotations = poly.rotations()?;
        let (group, perms) = FiniteGroup::from_permutations(name, rotations, poly.vertex_count)?;
        let edges = poly.edges();
        let faces = poly.face_cells();
        let nv = poly.vertex_count;
        let ne = edges.len();
        let nf = faces.len();
        let base = nv + ne + nf;

        let mut z_labels: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        z_labels.extend((0..ne).map(|i| format!("e{i}")));
        z_labels.extend((0..nf).map(|i| format!("f{i}")));
        push_free_orbit_labels(&mut z_labels, extra_orbits, group.order());

        let edge_index = |a: usize, b: usize| -> Result<usize> {
            edges
                .binary_search(&(a.min(b), a.max(b)))
                .map_err(|_| Error::Construction(format!("{name}: image edge ({a},{b}) missing")))
        };
        let mut act = Vec::with_capacity(group.order());
        for (gi, p) in perms.iter().enumerate() {
            let mut row: Vec<usize> = p.clone();
            for &(a, b) in &edges {
                row.push(nv + edge_index(p[a], p[b])?);
            }
            for f in &faces {
                let mut img = [p[f[0]], p[f[1]], p[f[2]]];
                img.sort();
                let fi = faces
                    .binary_search(&img)
                    .map_err(|_| Error::Construction(format!("{name}: image face {img:?} missing")))?;
                row.push(nv + ne + fi);
            }
            let g = GroupElem(gi);
            for t in 0..extra_orbits {
                for k in 0..group.order() {
                    row.push(base + t * group.order() + group.mul(g, GroupElem(k)).0);
                }
            }
            act.push(row);
        }

        // the axis of each rotation exits through two cells, which it
        // stabilizes; anything else is a construction error
        let mut fixed_pairs = vec![None; group.order()];
        for gi in 1..group.order() {
            let fixed: Vec<usize> = (0..base).filter(|&p| act[gi][p] == p).collect();
            match fixed.as_slice() {
                &[a, b] => fixed_pairs[gi] = Some((a, b)),
                _ => {
                    return Err(Error::Construction(format!(
                        "{name}: rotation g{gi} stabilizes {} cells instead of 2",
                        fixed.len()
                    )))
                }
            }
        }
        Ok(MarkedAction {
            group,
            kind,
            descriptor: descriptor(name, extra_orbits),
            z_labels,
            act,
            fixed_pairs,
            p_infinity: Some(0),
            sphere: false,
        })
    }

    /// Trivial group with `z_size` marked points.
    pub fn trivial(z_size: usize) -> Result<Self> {
        if z_size == 0 {
            return Err(Error::Construction("marked set must be non-empty".into()));
        }
        let group = FiniteGroup::cyclic(1)?;
        let mut z_labels = vec![INFINITY_LABEL.to_string()];
        for t in 1..z_size {
            z_labels.push(format!("q{t}"));
        }
        Ok(MarkedAction {
            group,
            kind: ActionKind::Trivial,
            descriptor: format!("trivial:{z_size}"),
            z_labels,
            act: vec![(0..z_size).collect()],
            fixed_pairs: vec![None],
            p_infinity: Some(0),
            sphere: false,
        })
    }

    /// The bare sphere: trivial group, no marked points. Only the series
    /// operations accept this.
    pub fn sphere_case() -> Self {
        MarkedAction {
            group: FiniteGroup::cyclic(1).expect("trivial group"),
            kind: ActionKind::Sphere,
            descriptor: "sphere".to_string(),
            z_labels: Vec::new(),
            act: vec![Vec::new()],
            fixed_pairs: vec![None],
            p_infinity: None,
            sphere: true,
        }
    }

    /// Parses a group specification such as `cyclic:3`, `dihedral:4+orbits:1`,
    /// `tetrahedral`, `trivial:2` or `sphere`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut parts = spec.split('+');
        let base = parts.next().unwrap_or_default().trim();
        let mut extra_orbits = 0usize;
        for modifier in parts {
            let modifier = modifier.trim();
            match modifier.split_once(':') {
                Some(("orbits", k)) => {
                    extra_orbits = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad orbit count `{k}` in `{spec}`")))?;
                }
                _ => return Err(Error::Parse(format!("unknown modifier `{modifier}` in `{spec}`"))),
            }
        }
        let parse_arg = |s: &str, what: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse(format!("bad {what} `{s}` in `{spec}`")))
        };
        match base.split_once(':') {
            Some(("cyclic", m)) => Self::cyclic(parse_arg(m, "order")?, extra_orbits),
            Some(("dihedral", m)) => Self::dihedral(parse_arg(m, "order")?, extra_orbits),
            Some(("trivial", z)) => {
                let a = Self::trivial(parse_arg(z, "marked set size")?)?;
                if extra_orbits > 0 {
                    // +orbits on the trivial group just appends fixed points
                    return Self::trivial(a.z_len() + extra_orbits).map(|mut b| {
                        b.descriptor = descriptor(&a.descriptor, extra_orbits);
                        b
                    });
                }
                Ok(a)
            }
            None => match base {
                "tetrahedral" => Self::platonic(Solid::Tetrahedral, extra_orbits),
                "octahedral" => Self::platonic(Solid::Octahedral, extra_orbits),
                "icosahedral" => Self::platonic(Solid::Icosahedral, extra_orbits),
                "sphere" => {
                    if extra_orbits > 0 {
                        Err(Error::Parse("the sphere case takes no orbit modifier".into()))
                    } else {
                        Ok(Self::sphere_case())
                    }
                }
                _ => Err(Error::Parse(format!("unknown group `{spec}`"))),
            },
            Some(_) => Err(Error::Parse(format!("unknown group `{spec}`"))),
        }
    }

    /// Moves the distinguished point to the marked point with this label.
    pub fn with_p_infinity(mut self, label: &str) -> Result<Self> {
        if self.sphere {
            return Err(Error::SphereCase);
        }
        let wanted = if label == "inf" { INFINITY_LABEL } else { label };
        match self.z_labels.iter().position(|l| l == wanted) {
            Some(idx) => {
                self.p_infinity = Some(idx);
                Ok(self)
            }
            None => Err(Error::UnknownPoint(label.to_string())),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn is_sphere(&self) -> bool {
        self.sphere
    }

    pub fn z_len(&self) -> usize {
        self.z_labels.len()
    }

    pub fn z_labels(&self) -> &[String] {
        &self.z_labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.z_labels[p]
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        let wanted = if label == "inf" { INFINITY_LABEL } else { label };
        self.z_labels.iter().position(|l| l == wanted)
    }

    /// Index of the distinguished point; `None` only for the bare sphere.
    pub fn p_infinity(&self) -> Option<usize> {
        self.p_infinity
    }

    pub fn act(&self, g: GroupElem, p: usize) -> usize {
        self.act[g.0][p]
    }

    /// The two fixed points of a non-identity element.
    pub fn fixed_pair(&self, g: GroupElem) -> Option<(usize, usize)> {
        self.fixed_pairs[g.0]
    }

    /// Order of the cyclic structure when the action is by powers of a single
    /// rotation (`1` for the trivial group); `None` otherwise.
    pub fn cyclic_exponent_order(&self) -> Option<usize> {
        match self.kind {
            ActionKind::Trivial => Some(1),
            ActionKind::Cyclic { m } => Some(m),
            _ => None,
        }
    }

    /// Orbit partition of the marked set, each orbit sorted, sorted by least
    /// element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.z_len()];
        let mut out = Vec::new();
        for p in 0..self.z_len() {
            if seen[p] {
                continue;
            }
            let mut orbit: Vec<usize> = self.group.elements().map(|g| self.act(g, p)).collect();
            orbit.sort();
            orbit.dedup();
            for &q in &orbit {
                seen[q] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Points with non-trivial stabilizer, sorted.
    pub fn irregular_points(&self) -> Vec<usize> {
        (0..self.z_len())
            .filter(|&p| self.group.elements().skip(1).any(|g| self.act(g, p) == p))
            .collect()
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for v in self.group.axiom_violations() {
            violations.push(Violation::Group(v));
        }
        let order = self.group.order();
        let nz = self.z_len();
        if self.act.len() != order {
            violations.push(Violation::Group(format!(
                "action table has {} rows for group order {order}",
                self.act.len()
            )));
            return ValidationReport { violations };
        }
        for g in 0..order {
            let row = &self.act[g];
            let mut seen = vec![false; nz];
            if row.len() != nz
                || row.iter().any(|&p| p >= nz || std::mem::replace(&mut seen[p], true))
            {
                violations.push(Violation::NotAPermutation { g });
            }
        }
        if violations.iter().any(|v| matches!(v, Violation::NotAPermutation { .. })) {
            return ValidationReport { violations };
        }
        for p in 0..nz {
            if self.act[0][p] != p {
                violations.push(Violation::IdentityMoves { p });
            }
        }
        'compat: for g in 0..order {
            for h in 0..order {
                let gh = self.group.mul(GroupElem(g), GroupElem(h)).0;
                for p in 0..nz {
                    if self.act[g][self.act[h][p]] != self.act[gh][p] {
                        violations.push(Violation::NotCompatible { g, h, p });
                        break 'compat;
                    }
                }
            }
        }
        for g in 1..order {
            let fixed: Vec<usize> = (0..nz).filter(|&p| self.act[g][p] == p).collect();
            let declared = self.fixed_pairs[g];
            let matches = match (fixed.as_slice(), declared) {
                (&[a, b], Some((x, y))) => (a, b) == (x.min(y), x.max(y)),
                _ => false,
            };
            if !matches {
                violations.push(Violation::FixedSetWrong { g, fixed, declared });
            }
        }
        if order > 1 {
            let irregular = self.irregular_points();
            let expected = if self.group.is_cyclic() { 2 } else { 2 + order };
            if irregular.len() != expected {
                violations.push(Violation::IrregularCount { found: irregular.len(), expected });
            }
            let irregular_orbits = self
                .orbits()
                .into_iter()
                .filter(|o| o.iter().any(|p| irregular.binary_search(p).is_ok()))
                .count();
            let expected_orbits = if self.group.is_cyclic() { 2 } else { 3 };
            if irregular_orbits != expected_orbits {
                violations.push(Violation::IrregularOrbits {
                    found: irregular_orbits,
                    expected: expected_orbits,
                });
            }
        }
        if self.sphere {
            if nz != 0 || order != 1 {
                violations.push(Violation::SphereInconsistent(
                    "expects a trivial group and empty marked set".into(),
                ));
            }
        } else {
            match self.p_infinity {
                Some(idx) if idx < nz => {}
                _ => violations.push(Violation::BasepointMissing),
            }
        }
        ValidationReport { violations }
    }
}

impl fmt::Display for MarkedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (group order {}, {} marked points)", self.descriptor, self.group.order(), self.z_len())
    }
}

fn descriptor(base: &str, extra_orbits: usize) -> String {
    if extra_orbits == 0 {
        base.to_string()
    } else {
        format!("{base}+orbits:{extra_orbits}")
    }
}

fn push_free_orbit_labels(labels: &mut Vec<String>, extra_orbits: usize, orbit_size: usize) {
    for t in 1..=extra_orbits {
        for k in 0..orbit_size {
            labels.push(format!("q{t}g{k}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(a: &MarkedAction) {
        let report = a.validate();
        assert!(report.is_ok(), "{}: {report}", a.descriptor());
    }

    #[test]
    fn cyclic_families_validate() {
        for m in 1..=12 {
            for extra in 0..=1 {
                assert_valid(&MarkedAction::cyclic(m, extra).unwrap());
            }
        }
    }

    #[test]
    fn dihedral_families_validate() {
        for m in 2..=12 {
            for extra in 0..=1 {
                assert_valid(&MarkedAction::dihedral(m, extra).unwrap());
            }
        }
    }

    #[test]
    fn platonic_families_validate() {
        for solid in [Solid::Tetrahedral, Solid::Octahedral, Solid::Icosahedral] {
            assert_valid(&MarkedAction::platonic(solid, 0).unwrap());
        }
        assert_valid(&MarkedAction::platonic(Solid::Tetrahedral, 1).unwrap());
    }

    #[test]
    fn trivial_and_sphere_validate() {
        for z in 1..=4 {
            assert_valid(&MarkedAction::trivial(z).unwrap());
        }
        assert_valid(&MarkedAction::sphere_case());
    }

    #[test]
    fn cyclic_marked_set() {
        let a = MarkedAction::cyclic(2, 1).unwrap();
        assert_eq!(a.z_len(), 4);
        assert_eq!(a.z_labels(), &["0", "∞", "q1g0", "q1g1"]);
        assert_eq!(a.p_infinity(), Some(1));
        assert_eq!(a.irregular_points(), vec![0, 1]);

        let b = MarkedAction::cyclic(1, 0).unwrap();
        assert_eq!(b.z_len(), 1);
        assert_eq!(b.p_infinity(), Some(0));
    }

    #[test]
    fn dihedral_structure() {
        let a = MarkedAction::dihedral(3, 0).unwrap();
        assert_eq!(a.group().order(), 6);
        assert_eq!(a.z_len(), 8);
        let orbit_sizes: Vec<usize> = a.orbits().iter().map(|o| o.len()).collect();
        assert_eq!(orbit_sizes, vec![2, 3, 3]);

        let b = MarkedAction::dihedral(4, 0).unwrap();
        assert_eq!(b.irregular_points().len(), 10);

        // Klein four group: every non-identity element is an involution with
        // its own axis
        let c = MarkedAction::dihedral(2, 0).unwrap();
        assert_eq!(c.z_len(), 6);
        for g in 1..4 {
            let pair = c.fixed_pair(GroupElem(g)).unwrap();
            assert_eq!(c.act(GroupElem(g), pair.0), pair.0);
            assert_eq!(c.act(GroupElem(g), pair.1), pair.1);
        }
    }

    #[test]
    fn platonic_structure() {
        let t = MarkedAction::platonic(Solid::Tetrahedral, 0).unwrap();
        assert_eq!(t.group().order(), 12);
        assert_eq!(t.z_len(), 14);
        assert_eq!(t.orbits().iter().map(|o| o.len()).collect::<Vec<_>>(), vec![4, 6, 4]);

        let o = MarkedAction::platonic(Solid::Octahedral, 0).unwrap();
        assert_eq!(o.group().order(), 24);
        assert_eq!(o.orbits().iter().map(|o| o.len()).collect::<Vec<_>>(), vec![6, 12, 8]);

        let i = MarkedAction::platonic(Solid::Icosahedral, 0).unwrap();
        assert_eq!(i.group().order(), 60);
        assert_eq!(i.z_len(), 62);
    }

    #[test]
    fn parse_round_trip() {
        for spec in ["cyclic:3", "cyclic:2+orbits:1", "dihedral:4", "tetrahedral", "trivial:3", "sphere"] {
            let a = MarkedAction::parse(spec).unwrap();
            assert_eq!(a.descriptor(), spec);
        }
        assert!(MarkedAction::parse("dodecahedral").is_err());
        assert!(MarkedAction::parse("cyclic:x").is_err());
        assert!(MarkedAction::parse("sphere+orbits:1").is_err());
        assert!(MarkedAction::parse("cyclic:0").is_err());
    }

    #[test]
    fn basepoint_override() {
        let a = MarkedAction::dihedral(2, 0).unwrap().with_p_infinity("μ1").unwrap();
        assert_eq!(a.p_infinity(), Some(3));
        assert_valid(&a);
        let b = MarkedAction::cyclic(2, 0).unwrap().with_p_infinity("inf").unwrap();
        assert_eq!(b.p_infinity(), Some(1));
        assert!(MarkedAction::cyclic(2, 0).unwrap().with_p_infinity("nowhere").is_err());
    }

    #[test]
    fn corrupted_action_flagged() {
        let mut a = MarkedAction::cyclic(3, 0).unwrap();
        // swap the declared fixed points of g1 for a bogus pair
        a.fixed_pairs[1] = None;
        assert!(!a.validate().is_ok());

        let mut b = MarkedAction::cyclic(3, 1).unwrap();
        // break equivariance: g1 now maps the first free point to itself
        b.act[1][2] = 2;
        let report = b.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotAPermutation { .. } | Violation::NotCompatible { .. })));
    }

    #[test]
    fn platonic_fixed_cells_match_axis_type() {
        let a = MarkedAction::platonic(Solid::Octahedral, 0).unwrap();
        // orders of rotations about a vertex/edge/face axis stabilize cells of
        // the matching kinds; just spot-check the counts per element order
        let mut by_order: std::collections::BTreeMap<usize, usize> = Default::default();
        for g in a.group().elements().skip(1) {
            *by_order.entry(a.group().element_order(g)).or_default() += 1;
        }
        assert_eq!(by_order, [(2, 9), (3, 8), (4, 6)].into_iter().collect());
    }
}
