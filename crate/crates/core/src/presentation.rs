//! Quadratic presentation of the cohomology algebra of an orbit
//! configuration space.
//!
//! Degree-1 generators come in two kinds: `Off(i,j,g)` couples strands `i<j`
//! through a group element, `Diag(k,p)` couples strand `k` to a marked point.
//! The generator at the distinguished point `p∞` is the zero form and is
//! never stored; the swapped pair obeys `Off(j,i,g) = Off(i,j,g⁻¹)` with no
//! sign. Four relator families cut out the algebra; every relator is a
//! degree-2 integer combination with coefficients ±1 on at most 8 monomials.

use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::action::MarkedAction;
use crate::error::{Error, Result};
use crate::group::GroupElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `1 ≤ i < j ≤ n`.
    Off { i: usize, j: usize, g: GroupElem },
    /// `p` indexes the marked set and is never the distinguished point.
    Diag { k: usize, p: usize },
}

impl Generator {
    /// Strand carried by the second tensor slot; basis monomials have these
    /// strictly increasing.
    pub fn second_strand(&self) -> usize {
        match *self {
            Generator::Off { j, .. } => j,
            Generator::Diag { k, .. } => k,
        }
    }

    /// Canonical order: second strand, then first strand, then decoration.
    /// Within a block all Off generators precede the Diag ones since `i < k`.
    fn sort_key(&self) -> (usize, usize, usize) {
        match *self {
            Generator::Off { i, j, g } => (j, i, g.0),
            Generator::Diag { k, p } => (k, k, p),
        }
    }
}

/// Which exponent the middle cross term of a shared-target relator carries.
/// The two candidates coincide whenever `g` fixes the distinguished point;
/// the rank oracle adjudicates between them in general.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rel3Variant {
    /// Cross term `Off(i,j, h·g⁻¹)`, consistent with the other two cross
    /// occurrences; the implemented default.
    #[default]
    HgInv,
    /// Cross term `Off(i,j, h⁻¹·g)`.
    HInvG,
}

impl Rel3Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Rel3Variant::HgInv => "hg-inverse",
            Rel3Variant::HInvG => "h-inverse-g",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "hg-inverse" => Ok(Rel3Variant::HgInv),
            "h-inverse-g" => Ok(Rel3Variant::HInvG),
            _ => Err(Error::Parse(format!(
                "unknown variant `{s}` (expected hg-inverse or h-inverse-g)"
            ))),
        }
    }
}

/// Instantiating data of one relator; the wire tags are rel1..rel4.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelatorData {
    /// rel1: two diagonal generators on one strand wedge to zero.
    DiagPair { k: usize, p: usize, q: usize },
    /// rel2: an off-diagonal generator against a diagonal one on its second
    /// strand.
    MixedPair { i: usize, j: usize, h: GroupElem, p: usize },
    /// rel3: two off-diagonal generators sharing their second strand.
    SharedTarget { i: usize, j: usize, k: usize, h: GroupElem, g: GroupElem },
    /// rel4: two off-diagonal generators on the same strand pair.
    ParallelPair { i: usize, j: usize, h: GroupElem, g: GroupElem },
}

impl RelatorData {
    pub fn family(&self) -> &'static str {
        match self {
            RelatorData::DiagPair { .. } => "rel1",
            RelatorData::MixedPair { .. } => "rel2",
            RelatorData::SharedTarget { .. } => "rel3",
            RelatorData::ParallelPair { .. } => "rel4",
        }
    }
}

/// A degree-2 element declared zero. Terms are `(coeff, [a, b])` with `a < b`
/// generator indices, sorted by `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub data: RelatorData,
    pub terms: Vec<(i64, [usize; 2])>,
}

/// One element of `G^n ⋊ S_n`: a tuple acting strandwise and a permutation
/// relabeling strands. `perm[k-1]` is the image of strand `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    tuple: Vec<GroupElem>,
    perm: Vec<usize>,
}

impl Transform {
    pub fn new(tuple: Vec<GroupElem>, perm: Vec<usize>) -> Result<Self> {
        if tuple.len() != perm.len() {
            return Err(Error::InvalidAction("tuple and permutation lengths differ".into()));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in &perm {
            if v < 1 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidAction(format!("{perm:?} is not a permutation of 1..={n}")));
            }
        }
        Ok(Transform { tuple, perm })
    }

    pub fn identity(n: usize) -> Self {
        Transform { tuple: vec![GroupElem(0); n], perm: (1..=n).collect() }
    }

    pub fn tuple(&self) -> &[GroupElem] {
        &self.tuple
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    fn perm_inv(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (k, &v) in self.perm.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        inv
    }

    /// Group law: `(g,σ)(h,τ) = (g·σ(h), στ)` where `σ(h)_k = h_{σ⁻¹(k)}`.
    pub fn compose(&self, rhs: &Self, group: &crate::group::FiniteGroup) -> Self {
        let n = self.perm.len();
        assert_eq!(n, rhs.perm.len(), "transform sizes differ");
        let inv = self.perm_inv();
        let tuple = (0..n)
            .map(|k| group.mul(self.tuple[k], rhs.tuple[inv[k] - 1]))
            .collect();
        let perm = (0..n).map(|k| self.perm[rhs.perm[k] - 1]).collect();
        Transform { tuple, perm }
    }

    pub fn inverse(&self, group: &crate::group::FiniteGroup) -> Self {
        let inv = self.perm_inv();
        let tuple = (0..self.perm.len()).map(|k| group.inv(self.tuple[self.perm[k] - 1])).collect();
        Transform { tuple, perm: inv }
    }

    /// Every transform, ordered by permutation then tuple; |G|^n · n! entries.
    pub fn all(group: &crate::group::FiniteGroup, n: usize) -> Vec<Transform> {
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        permutations(&mut cur, n, &mut perms);
        perms.sort();
        let order = group.order();
        let mut out = Vec::new();
        for perm in &perms {
            let mut tuple = vec![GroupElem(0); n];
            loop {
                out.push(Transform { tuple: tuple.clone(), perm: perm.clone() });
                let mut k = 0;
                while k < n {
                    tuple[k].0 += 1;
                    if tuple[k].0 < order {
                        break;
                    }
                    tuple[k].0 = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        out
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        cur.swap(i, k - 1);
        permutations(cur, k - 1, out);
        cur.swap(i, k - 1);
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    action: MarkedAction,
    n: usize,
    variant: Rel3Variant,
    generators: Vec<Generator>,
    index: HashMap<Generator, usize>,
    blocks: Vec<(usize, usize)>,
    relators: Vec<Relator>,
    id: u64,
}

impl Presentation {
    pub fn new(action: MarkedAction, n: usize) -> Result<Self> {
        Self::with_variant(action, n, Rel3Variant::default())
    }

    pub fn with_variant(action: MarkedAction, n: usize, variant: Rel3Variant) -> Result<Self> {
        if action.is_sphere() {
            return Err(Error::SphereCase);
        }
        if n == 0 {
            return Err(Error::Construction("strand count must be at least 1".into()));
        }
        let report = action.validate();
        if !report.is_ok() {
            return Err(Error::InvalidAction(report.to_string()));
        }
        let p_inf = action.p_infinity().expect("non-sphere action has a distinguished point");

        let mut generators = Vec::new();
        let mut blocks = Vec::with_capacity(n);
        for u in 1..=n {
            let start = generators.len();
            for i in 1..u {
                for g in action.group().elements() {
                    generators.push(Generator::Off { i, j: u, g });
                }
            }
            for p in 0..action.z_len() {
                if p != p_inf {
                    generators.push(Generator::Diag { k: u, p });
                }
            }
            blocks.push((start, generators.len() - start));
        }
        debug_assert!(generators.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()));
        let index = generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();

        let mut id_hasher = std::collections::hash_map::DefaultHasher::new();
        action.descriptor().hash(&mut id_hasher);
        action.z_labels().hash(&mut id_hasher);
        p_inf.hash(&mut id_hasher);
        n.hash(&mut id_hasher);
        variant.tag().hash(&mut id_hasher);
        let id = id_hasher.finish();

        let mut pres = Presentation {
            action,
            n,
            variant,
            generators,
            index,
            blocks,
            relators: Vec::new(),
            id,
        };
        pres.relators = pres.emit_relators();
        Ok(pres)
    }

    pub fn action(&self) -> &MarkedAction {
        &self.action
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Rel3Variant {
        self.variant
    }

    /// Opaque identity used to reject mixing elements of different
    /// presentations.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> Generator {
        self.generators[idx]
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Per-strand `(start, len)` ranges in the generator list; block `u` holds
    /// every generator with second strand `u+1`.
    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    /// Canonical index of `Off(i,j,g)`, accepting either strand order.
    pub fn off_index(&self, i: usize, j: usize, g: GroupElem) -> Result<usize> {
        if i == j || i < 1 || j < 1 || i > self.n || j > self.n {
            return Err(Error::Construction(format!("no off-diagonal generator for strands ({i},{j})")));
        }
        let gen = if i < j {
            Generator::Off { i, j, g }
        } else {
            Generator::Off { i: j, j: i, g: self.action.group().inv(g) }
        };
        Ok(self.index[&gen])
    }

    /// Canonical index of `Diag(k,p)`; `None` when `p` is the distinguished
    /// point, whose generator is the zero form.
    pub fn diag_index(&self, k: usize, p: usize) -> Result<Option<usize>> {
        if k < 1 || k > self.n || p >= self.action.z_len() {
            return Err(Error::Construction(format!("no diagonal generator for strand {k}, point {p}")));
        }
        if Some(p) == self.action.p_infinity() {
            return Ok(None);
        }
        Ok(Some(self.index[&Generator::Diag { k, p }]))
    }

    pub fn render_generator(&self, idx: usize) -> String {
        match self.generators[idx] {
            Generator::Off { i, j, g } => format!("w[{i},{j};{}]", self.action.group().element_name(g)),
            Generator::Diag { k, p } => format!("w[{k};{}]", self.action.label(p)),
        }
    }

    fn off(&self, i: usize, j: usize, g: GroupElem) -> Option<usize> {
        Some(self.off_index(i, j, g).expect("strands in range"))
    }

    fn diag(&self, k: usize, p: usize) -> Option<usize> {
        self.diag_index(k, p).expect("strand and point in range")
    }

    /// rel1: `Diag(k,p) ∧ Diag(k,q)`.
    pub fn rel1_terms(&self, k: usize, p: usize, q: usize) -> Vec<(i64, [usize; 2])> {
        let mut b = TermBuilder::default();
        b.wedge(1, self.diag(k, p), self.diag(k, q));
        b.finish()
    }

    /// rel2: `Off(i,j,h) ∧ Diag(j,p)` minus its straightened form, valid for
    /// any `i ≠ j`.
    pub fn rel2_terms(&self, i: usize, j: usize, h: GroupElem, p: usize) -> Vec<(i64, [usize; 2])> {
        let act = |g: GroupElem, p: usize| self.action.act(g, p);
        let p_inf = self.action.p_infinity().unwrap();
        let a = self.off(i, j, h);
        let mut b = TermBuilder::default();
        b.wedge(1, a, self.diag(j, p));
        b.wedge(-1, a, self.diag(i, act(h, p)));
        b.wedge(-1, self.diag(i, act(h, p)), self.diag(j, p));
        b.wedge(-1, self.diag(i, act(h, p_inf)), a);
        b.finish()
    }

    /// rel3: `Off(i,k,h) ∧ Off(j,k,g)` minus its straightened form, for
    /// distinct `i,j,k`. The middle cross exponent depends on the variant.
    pub fn rel3_terms(
        &self,
        i: usize,
        j: usize,
        k: usize,
        h: GroupElem,
        g: GroupElem,
    ) -> Vec<(i64, [usize; 2])> {
        let group = self.action.group();
        let p_inf = self.action.p_infinity().unwrap();
        let a = self.off(i, k, h);
        let bb = self.off(j, k, g);
        let cross = self.off(i, j, group.mul(h, group.inv(g)));
        let cross_mid = match self.variant {
            Rel3Variant::HgInv => cross,
            Rel3Variant::HInvG => self.off(i, j, group.mul(group.inv(h), g)),
        };
        let di = self.diag(i, self.action.act(h, p_inf));
        let dj = self.diag(j, self.action.act(g, p_inf));
        let mut b = TermBuilder::default();
        b.wedge(1, a, bb);
        b.wedge(-1, cross, bb);
        b.wedge(1, cross, a);
        b.wedge(-1, dj, cross_mid);
        b.wedge(1, dj, bb);
        b.wedge(-1, di, a);
        b.wedge(1, di, cross);
        b.wedge(-1, di, dj);
        b.finish()
    }

    /// rel4: `Off(i,j,h) ∧ Off(i,j,g)` minus its straightened form, for
    /// `i < j` and `h ≠ g`; the diagonal pair comes from the fixed points of
    /// `h·g⁻¹`.
    pub fn rel4_terms(&self, i: usize, j: usize, h: GroupElem, g: GroupElem) -> Vec<(i64, [usize; 2])> {
        let group = self.action.group();
        let p_inf = self.action.p_infinity().unwrap();
        let hg = group.mul(h, group.inv(g));
        let (p1, p2) = self.action.fixed_pair(hg).expect("h≠g so h·g⁻¹ is not the identity");
        let hh = self.off(i, j, h);
        let gg = self.off(i, j, g);
        let mut b = TermBuilder::default();
        b.wedge(1, hh, gg);
        for p in [p1, p2] {
            b.wedge(-1, self.diag(i, p), gg);
            b.wedge(1, self.diag(i, p), hh);
        }
        b.wedge(1, self.diag(i, self.action.act(g, p_inf)), gg);
        b.wedge(-1, self.diag(i, self.action.act(h, p_inf)), hh);
        b.finish()
    }

    pub fn relator_terms(&self, data: &RelatorData) -> Vec<(i64, [usize; 2])> {
        match *data {
            RelatorData::DiagPair { k, p, q } => self.rel1_terms(k, p, q),
            RelatorData::MixedPair { i, j, h, p } => self.rel2_terms(i, j, h, p),
            RelatorData::SharedTarget { i, j, k, h, g } => self.rel3_terms(i, j, k, h, g),
            RelatorData::ParallelPair { i, j, h, g } => self.rel4_terms(i, j, h, g),
        }
    }

    /// Emission is family-major, tuples lexicographic within each family:
    /// rel1 over (k, p<q), rel2 over ordered (i≠j, h, p), rel3 over ordered
    /// distinct (i,j,k,h,g), rel4 over (i<j, h<g).
    fn emit_relators(&self) -> Vec<Relator> {
        let n = self.n;
        let p_inf = self.action.p_infinity().unwrap();
        let zs: Vec<usize> = (0..self.action.z_len()).filter(|&p| p != p_inf).collect();
        let elems: Vec<GroupElem> = self.action.group().elements().collect();
        let mut out = Vec::new();
        let mut push = |data: RelatorData, terms: Vec<(i64, [usize; 2])>| {
            if !terms.is_empty() {
                out.push(Relator { data, terms });
            }
        };
        for k in 1..=n {
            for (a, &p) in zs.iter().enumerate() {
                for &q in &zs[a + 1..] {
                    push(RelatorData::DiagPair { k, p, q }, self.rel1_terms(k, p, q));
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                for &h in &elems {
                    for &p in &zs {
                        push(RelatorData::MixedPair { i, j, h, p }, self.rel2_terms(i, j, h, p));
                    }
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if j == i {
                    continue;
                }
                for k in 1..=n {
                    if k == i || k == j {
                        continue;
                    }
                    for &h in &elems {
                        for &g in &elems {
                            push(
                                RelatorData::SharedTarget { i, j, k, h, g },
                                self.rel3_terms(i, j, k, h, g),
                            );
                        }
                    }
                }
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                for (a, &h) in elems.iter().enumerate() {
                    for &g in &elems[a + 1..] {
                        push(RelatorData::ParallelPair { i, j, h, g }, self.rel4_terms(i, j, h, g));
                    }
                }
            }
        }
        out
    }

    /// Pullback of one generator along a transform, as an integer combination
    /// of generators. The tuple acts first, the permutation then relabels
    /// strands; composites therefore satisfy `(st)* = t* ∘ s*`.
    pub fn symmetry_on_generator(&self, t: &Transform, gen: usize) -> Result<Vec<(i64, usize)>> {
        if t.tuple.len() != self.n {
            return Err(Error::InvalidAction(format!(
                "transform size {} does not match strand count {}",
                t.tuple.len(),
                self.n
            )));
        }
        let group = self.action.group();
        let p_inf = self.action.p_infinity().unwrap();
        let perm_inv = t.perm_inv();
        let relabel = |s: usize| perm_inv[s - 1];

        let mut pulled: Vec<(i64, Generator)> = Vec::with_capacity(3);
        match self.generators[gen] {
            Generator::Off { i, j, g } => {
                let h = t.tuple[i - 1];
                let f = t.tuple[j - 1];
                let e = group.mul(group.mul(group.inv(h), g), f);
                pulled.push((1, Generator::Off { i, j, g: e }));
                for (s, v) in [(i, h), (j, f)] {
                    let p = self.action.act(group.inv(v), p_inf);
                    if p != p_inf {
                        pulled.push((-1, Generator::Diag { k: s, p }));
                    }
                }
            }
            Generator::Diag { k, p } => {
                let h_inv = group.inv(t.tuple[k - 1]);
                for (sign, point) in [(1, self.action.act(h_inv, p)), (-1, self.action.act(h_inv, p_inf))] {
                    if point != p_inf {
                        pulled.push((sign, Generator::Diag { k, p: point }));
                    }
                }
            }
        }

        let mut combined: BTreeMap<usize, i64> = BTreeMap::new();
        for (c, gen) in pulled {
            let idx = match gen {
                Generator::Off { i, j, g } => self.off_index(relabel(i), relabel(j), g)?,
                Generator::Diag { k, p } => self
                    .diag_index(relabel(k), p)?
                    .expect("p≠p∞ was already enforced"),
            };
            *combined.entry(idx).or_insert(0) += c;
        }
        Ok(combined.into_iter().filter(|&(_, c)| c != 0).map(|(i, c)| (c, i)).collect())
    }

    /// Linear extension of the pullback to degree-1 combinations.
    pub fn symmetry_on_combo(&self, t: &Transform, combo: &[(i64, usize)]) -> Result<Vec<(i64, usize)>> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(c, gen) in combo {
            for (d, idx) in self.symmetry_on_generator(t, gen)? {
                *acc.entry(idx).or_insert(0) += c * d;
            }
        }
        Ok(acc.into_iter().filter(|&(_, c)| c != 0).map(|(i, c)| (c, i)).collect())
    }
}

#[derive(Default)]
struct TermBuilder {
    terms: BTreeMap<[usize; 2], i64>,
}

impl TermBuilder {
    /// Adds `sign · ω_a ∧ ω_b`, skipping dropped zero forms and squares.
    fn wedge(&mut self, sign: i64, a: Option<usize>, b: Option<usize>) {
        let (Some(a), Some(b)) = (a, b) else { return };
        if a == b {
            return;
        }
        let (key, s) = if a < b { ([a, b], sign) } else { ([b, a], -sign) };
        *self.terms.entry(key).or_insert(0) += s;
    }

    fn finish(self) -> Vec<(i64, [usize; 2])> {
        let out: Vec<(i64, [usize; 2])> =
            self.terms.into_iter().filter(|&(_, c)| c != 0).map(|(k, c)| (c, k)).collect();
        debug_assert!(out.iter().all(|&(c, _)| c == 1 || c == -1), "relator coefficient out of ±1");
        debug_assert!(out.len() <= 8);
        out
    }
}

// ---- serialization ----

#[derive(Serialize, Deserialize)]
struct GroupDoc {
    spec: String,
    mult: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ZDoc {
    labels: Vec<String>,
    p_infinity: usize,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RelatorDataDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RelatorDoc {
    family: String,
    data: RelatorDataDoc,
    terms: Vec<(i64, [usize; 2])>,
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    schema: String,
    group: GroupDoc,
    z: ZDoc,
    n: usize,
    rel3_variant: String,
    generators: Vec<GeneratorDoc>,
    relators: Vec<RelatorDoc>,
}

pub const PRESENTATION_SCHEMA: &str = "orbitconf/presentation/v1";

/// Deterministic JSON document; `import_presentation` round-trips it.
pub fn export_presentation(pres: &Presentation) -> String {
    let action = pres.action();
    let doc = PresentationDoc {
        schema: PRESENTATION_SCHEMA.to_string(),
        group: GroupDoc {
            spec: action.descriptor().to_string(),
            mult: action.group().mult_table().to_vec(),
        },
        z: ZDoc {
            labels: action.z_labels().to_vec(),
            p_infinity: action.p_infinity().unwrap(),
        },
        n: pres.n(),
        rel3_variant: pres.variant().tag().to_string(),
        generators: pres
            .generators()
            .iter()
            .map(|gen| match *gen {
                Generator::Off { i, j, g } => GeneratorDoc {
                    kind: "off_diag".into(),
                    i: Some(i),
                    j: Some(j),
                    g: Some(g.0),
                    k: None,
                    p: None,
                },
                Generator::Diag { k, p } => GeneratorDoc {
                    kind: "diag".into(),
                    i: None,
                    j: None,
                    g: None,
                    k: Some(k),
                    p: Some(p),
                },
            })
            .collect(),
        relators: pres
            .relators()
            .iter()
            .map(|r| {
                let mut d = RelatorDataDoc { i: None, j: None, k: None, h: None, g: None, p: None, q: None };
                match r.data {
                    RelatorData::DiagPair { k, p, q } => {
                        d.k = Some(k);
                        d.p = Some(p);
                        d.q = Some(q);
                    }
                    RelatorData::MixedPair { i, j, h, p } => {
                        d.i = Some(i);
                        d.j = Some(j);
                        d.h = Some(h.0);
                        d.p = Some(p);
                    }
                    RelatorData::SharedTarget { i, j, k, h, g } => {
                        d.i = Some(i);
                        d.j = Some(j);
                        d.k = Some(k);
                        d.h = Some(h.0);
                        d.g = Some(g.0);
                    }
                    RelatorData::ParallelPair { i, j, h, g } => {
                        d.i = Some(i);
                        d.j = Some(j);
                        d.h = Some(h.0);
                        d.g = Some(g.0);
                    }
                }
                RelatorDoc { family: r.data.family().to_string(), data: d, terms: r.terms.clone() }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("presentation serializes")
}

/// Rebuilds the presentation named by the document and verifies that every
/// serialized field matches the reconstruction, the multiplication table
/// included.
pub fn import_presentation(text: &str) -> Result<Presentation> {
    let doc: PresentationDoc =
        serde_json::from_str(text).map_err(|e| Error::Import(format!("malformed document: {e}")))?;
    if doc.schema != PRESENTATION_SCHEMA {
        return Err(Error::Import(format!("unsupported schema `{}`", doc.schema)));
    }
    let mut action = MarkedAction::parse(&doc.group.spec)?;
    let label = doc
        .z
        .labels
        .get(doc.z.p_infinity)
        .ok_or_else(|| Error::Import("p_infinity index out of range".into()))?
        .clone();
    action = action.with_p_infinity(&label)?;
    if action.z_labels() != doc.z.labels.as_slice() {
        return Err(Error::Import("marked point labels do not match the group spec".into()));
    }
    if action.group().mult_table() != doc.group.mult {
        return Err(Error::Import("multiplication table does not match the group spec".into()));
    }
    let pres = Presentation::with_variant(action, doc.n, Rel3Variant::parse(&doc.rel3_variant)?)?;
    let canonical = export_presentation(&pres);
    if canonical != text {
        // tolerate formatting differences but nothing structural
        let reparsed: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Import(e.to_string()))?;
        let ours: serde_json::Value = serde_json::from_str(&canonical).expect("canonical JSON");
        if reparsed != ours {
            return Err(Error::Import("document disagrees with the presentation it names".into()));
        }
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::MarkedAction;

    fn cyclic2_n2() -> Presentation {
        Presentation::new(MarkedAction::cyclic(2, 0).unwrap(), 2).unwrap()
    }

    #[test]
    fn generator_counts() {
        let trivial = Presentation::new(MarkedAction::trivial(1).unwrap(), 3).unwrap();
        assert_eq!(trivial.generator_count(), 3);
        assert_eq!(cyclic2_n2().generator_count(), 4);
        let tetra = Presentation::new(MarkedAction::platonic(crate::action::Solid::Tetrahedral, 0).unwrap(), 2)
            .unwrap();
        assert_eq!(tetra.generator_count(), 38);

        for (spec, n) in [("cyclic:3", 4), ("dihedral:2", 3), ("trivial:2", 5), ("cyclic:2+orbits:1", 3)] {
            let a = MarkedAction::parse(spec).unwrap();
            let pres = Presentation::new(a.clone(), n).unwrap();
            let pairs = n * (n - 1) / 2;
            assert_eq!(
                pres.generator_count(),
                pairs * a.group().order() + n * (a.z_len() - 1),
                "{spec}"
            );
        }
    }

    #[test]
    fn generator_order_and_blocks() {
        let pres = cyclic2_n2();
        let g0 = GroupElem(0);
        let g1 = GroupElem(1);
        assert_eq!(
            pres.generators(),
            &[
                Generator::Diag { k: 1, p: 0 },
                Generator::Off { i: 1, j: 2, g: g0 },
                Generator::Off { i: 1, j: 2, g: g1 },
                Generator::Diag { k: 2, p: 0 },
            ]
        );
        assert_eq!(pres.blocks(), &[(0, 1), (1, 3)]);
        assert_eq!(pres.render_generator(1), "w[1,2;g0]");
        assert_eq!(pres.render_generator(0), "w[1;0]");
    }

    #[test]
    fn off_canonicalization_inverts() {
        let pres = Presentation::new(MarkedAction::cyclic(3, 0).unwrap(), 2).unwrap();
        let g = GroupElem(1);
        let direct = pres.off_index(1, 2, GroupElem(2)).unwrap();
        assert_eq!(pres.off_index(2, 1, g).unwrap(), direct);
    }

    #[test]
    fn rel2_example() {
        let pres = cyclic2_n2();
        let terms = pres.rel2_terms(1, 2, GroupElem(0), 0);
        assert_eq!(terms, vec![(1, [0, 1]), (-1, [0, 3]), (1, [1, 3])]);
    }

    #[test]
    fn rel4_example() {
        let pres = cyclic2_n2();
        let terms = pres.rel4_terms(1, 2, GroupElem(0), GroupElem(1));
        assert_eq!(terms, vec![(1, [0, 1]), (-1, [0, 2]), (1, [1, 2])]);
    }

    #[test]
    fn arnold_relator() {
        let pres = Presentation::new(MarkedAction::trivial(1).unwrap(), 3).unwrap();
        assert_eq!(pres.relators().len(), 6);
        for r in pres.relators() {
            assert_eq!(r.data.family(), "rel3");
            assert_eq!(r.terms.len(), 3);
        }
        let terms = pres.rel3_terms(1, 2, 3, GroupElem(0), GroupElem(0));
        assert_eq!(terms, vec![(1, [0, 1]), (-1, [0, 2]), (1, [1, 2])]);
    }

    #[test]
    fn relator_family_counts() {
        for (spec, n) in [("cyclic:2", 3), ("cyclic:3", 2), ("dihedral:2", 2), ("trivial:3", 3)] {
            let a = MarkedAction::parse(spec).unwrap();
            let go = a.group().order();
            let z1 = a.z_len() - 1;
            let pres = Presentation::new(a, n).unwrap();
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for r in pres.relators() {
                *counts.entry(r.data.family()).or_insert(0) += 1;
            }
            let pairs = n * (n - 1) / 2;
            assert_eq!(counts.remove("rel1").unwrap_or(0), n * z1 * (z1 - 1) / 2, "{spec} rel1");
            assert_eq!(counts.remove("rel2").unwrap_or(0), n * (n - 1) * go * z1, "{spec} rel2");
            assert_eq!(
                counts.remove("rel3").unwrap_or(0),
                n * (n - 1) * n.saturating_sub(2) * go * go,
                "{spec} rel3"
            );
            assert_eq!(counts.remove("rel4").unwrap_or(0), pairs * go * (go - 1) / 2, "{spec} rel4");
            assert!(counts.is_empty());
        }
    }

    #[test]
    fn relator_coefficients_are_units() {
        for (spec, n) in [
            ("cyclic:1", 4),
            ("cyclic:2", 4),
            ("cyclic:4", 3),
            ("cyclic:2+orbits:1", 3),
            ("dihedral:2", 3),
            ("dihedral:3", 3),
            ("trivial:3", 4),
        ] {
            for variant in [Rel3Variant::HgInv, Rel3Variant::HInvG] {
                let pres =
                    Presentation::with_variant(MarkedAction::parse(spec).unwrap(), n, variant).unwrap();
                for r in pres.relators() {
                    assert!(!r.terms.is_empty());
                    assert!(r.terms.len() <= 8, "{spec}: {} terms", r.terms.len());
                    for &(c, [a, b]) in &r.terms {
                        assert!(c == 1 || c == -1, "{spec}: coefficient {c}");
                        assert!(a < b, "{spec}: unsorted pair");
                    }
                    assert!(r.terms.windows(2).all(|w| w[0].1 < w[1].1));
                }
            }
        }
    }

    #[test]
    fn variants_differ_only_in_rel3_cross_term() {
        // need h² ≠ g² for the exponents to differ and a g moving p∞ for the
        // cross term to survive: dihedral order 6 is the smallest such case
        let a = MarkedAction::dihedral(3, 0).unwrap();
        let hg = Presentation::with_variant(a.clone(), 3, Rel3Variant::HgInv).unwrap();
        let hig = Presentation::with_variant(a, 3, Rel3Variant::HInvG).unwrap();
        assert_eq!(hg.generators(), hig.generators());
        let mut differing = 0;
        for (x, y) in hg.relators().iter().zip(hig.relators()) {
            assert_eq!(x.data, y.data);
            if x.terms != y.terms {
                assert_eq!(x.data.family(), "rel3");
                differing += 1;
            }
        }
        assert!(differing > 0, "dihedral moves the distinguished point, variants must differ");

        // every element of a polar cyclic action fixes p∞, so the variants agree
        let c = MarkedAction::cyclic(3, 0).unwrap();
        let hg = Presentation::with_variant(c.clone(), 3, Rel3Variant::HgInv).unwrap();
        let hig = Presentation::with_variant(c, 3, Rel3Variant::HInvG).unwrap();
        for (x, y) in hg.relators().iter().zip(hig.relators()) {
            assert_eq!(x.terms, y.terms);
        }
    }

    #[test]
    fn transform_group_law() {
        let a = MarkedAction::cyclic(3, 0).unwrap();
        let group = a.group().clone();
        let all = Transform::all(&group, 2);
        assert_eq!(all.len(), 9 * 2);
        for s in &all {
            let id = s.compose(&s.inverse(&group), &group);
            assert_eq!(id, Transform::identity(2));
        }
    }

    #[test]
    fn symmetry_identity_and_examples() {
        let pres = cyclic2_n2();
        let id = Transform::identity(2);
        for gen in 0..pres.generator_count() {
            assert_eq!(pres.symmetry_on_generator(&id, gen).unwrap(), vec![(1, gen)]);
        }

        // the involution on strand 1 fixes both poles, so Diag(1, 0) is inert
        let t = Transform::new(vec![GroupElem(1), GroupElem(0)], vec![1, 2]).unwrap();
        assert_eq!(pres.symmetry_on_generator(&t, 0).unwrap(), vec![(1, 0)]);
        // it twists the off-diagonal decoration: g ↦ g1·g
        assert_eq!(pres.symmetry_on_generator(&t, 1).unwrap(), vec![(1, 2)]);

        let arnold = Presentation::new(MarkedAction::trivial(1).unwrap(), 2).unwrap();
        let swap = Transform::new(vec![GroupElem(0); 2], vec![2, 1]).unwrap();
        assert_eq!(arnold.symmetry_on_generator(&swap, 0).unwrap(), vec![(1, 0)]);
    }

    #[test]
    fn symmetry_is_contravariant_action() {
        for spec in ["cyclic:2", "trivial:2"] {
            let pres = Presentation::new(MarkedAction::parse(spec).unwrap(), 3).unwrap();
            let group = pres.action().group().clone();
            let all = Transform::all(&group, 3);
            for s in &all {
                for t in &all {
                    let st = s.compose(t, &group);
                    for gen in 0..pres.generator_count() {
                        let via_product = pres.symmetry_on_generator(&st, gen).unwrap();
                        let stepwise = pres
                            .symmetry_on_combo(t, &pres.symmetry_on_generator(s, gen).unwrap())
                            .unwrap();
                        assert_eq!(via_product, stepwise, "{spec}: transform composite mismatch");
                    }
                }
            }
        }
    }

    #[test]
    fn export_round_trip() {
        let pres = cyclic2_n2();
        let doc = export_presentation(&pres);
        let back = import_presentation(&doc).unwrap();
        assert_eq!(export_presentation(&back), doc);
        assert_eq!(back.generators(), pres.generators());
        assert_eq!(back.relators(), pres.relators());

        let tampered = doc.replace("\"p_infinity\": 1", "\"p_infinity\": 0");
        assert!(import_presentation(&tampered).is_err());
        assert!(import_presentation("{}").is_err());
    }

    #[test]
    fn non_polar_basepoint_presentations_build() {
        let a = MarkedAction::dihedral(2, 0).unwrap().with_p_infinity("μ0").unwrap();
        let pres = Presentation::new(a, 2).unwrap();
        assert_eq!(pres.generator_count(), 4 + 2 * 5);
    }

    #[test]
    fn sphere_and_degenerate_inputs_rejected() {
        assert!(Presentation::new(MarkedAction::sphere_case(), 2).is_err());
        assert!(Presentation::new(MarkedAction::trivial(1).unwrap(), 0).is_err());
    }
}
