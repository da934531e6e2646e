//! The configuration space as a hypersurface complement in affine space:
//! irreducible component inventory, the closed-form factorization available
//! in the cyclic family, and the meridian bookkeeping dual to the degree-1
//! generators.
//!
//! Only cyclic actions (the trivial group included) linearize to a product
//! of affine factors with exact symbolic coefficients; for every other group
//! two components through a shared fixed pair meet in two points, which no
//! hyperplane pair can do, so only the labeled inventory is produced there.

use crate::action::MarkedAction;
use crate::error::{Error, Result};
use crate::presentation::{Generator, Presentation};

/// One irreducible component, indexed like the degree-1 generator it is dual
/// to. The label is the affine equation in the cyclic family and a symbolic
/// `D[..]` name otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub generator: Generator,
    pub label: String,
}

/// All irreducible components, in the canonical generator order.
#[derive(Clone, Debug)]
pub struct ComponentInventory {
    pub components: Vec<Component>,
}

impl ComponentInventory {
    pub fn total(&self) -> usize {
        self.components.len()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.label.as_str()).collect()
    }
}

/// One affine factor of the defining polynomial: `z_i = point` or
/// `z_i = ζ^exponent z_j` with the root of unity kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Diag { i: usize, point: String },
    OffDiag { i: usize, j: usize, exponent: usize },
}

/// Meridian loop label, dual to the generator with the same index data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meridian(pub Generator);

/// The meridian/generator bijection realizing first-homology duality. The
/// period matrix is the identity by the indexing itself; no integration
/// happens here.
#[derive(Clone, Debug)]
pub struct PeriodPairing {
    pub pairs: Vec<(Meridian, Generator)>,
    pub identity: bool,
}

impl PeriodPairing {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

fn render_offdiag(i: usize, j: usize, exponent: usize, m: usize) -> String {
    match m {
        1 => format!("z{i} - z{j}"),
        2 => {
            if exponent == 0 {
                format!("z{i} - z{j}")
            } else {
                format!("z{i} + z{j}")
            }
        }
        _ => format!("z{i} - ζ^{exponent} z{j}"),
    }
}

fn render_diag(i: usize, point: &str) -> String {
    if point == "0" {
        format!("z{i}")
    } else {
        format!("z{i} - {point}")
    }
}

/// Text form of a factor, resolving the root of unity where the group order
/// makes it literal (`m ≤ 2`).
pub fn render_factor(action: &MarkedAction, factor: &Factor) -> String {
    match factor {
        Factor::Diag { i, point } => render_diag(*i, point),
        Factor::OffDiag { i, j, exponent } => {
            let m = action.cyclic_exponent_order().unwrap_or(0);
            render_offdiag(*i, *j, *exponent, m)
        }
    }
}

fn component_label(action: &MarkedAction, generator: &Generator) -> String {
    let group = action.group();
    match (action.cyclic_exponent_order(), generator) {
        (Some(_), Generator::Diag { k, p }) => render_diag(*k, action.label(*p)),
        (Some(m), Generator::Off { i, j, g }) => render_offdiag(*i, *j, g.0, m),
        (None, Generator::Diag { k, p }) => format!("D[{k};{}]", action.label(*p)),
        (None, Generator::Off { i, j, g }) => {
            format!("D[{i},{j};{}]", group.element_name(*g))
        }
    }
}

/// Labeled inventory of the irreducible components, bijective with the
/// degree-1 generators.
pub fn components(action: &MarkedAction, n: usize) -> Result<ComponentInventory> {
    let pres = Presentation::new(action.clone(), n)?;
    let components = (0..pres.generator_count())
        .map(|idx| {
            let generator = pres.generator(idx);
            Component { label: component_label(action, &generator), generator }
        })
        .collect();
    Ok(ComponentInventory { components })
}

/// Factors of the defining polynomial, in its display order: every
/// `z_i - q` over the finite marked points, then `z_i - ζ^k z_j` over
/// ordered pairs and exponents.
pub fn defining_factors(action: &MarkedAction, n: usize) -> Result<Vec<Factor>> {
    if action.is_sphere() {
        return Err(Error::SphereCase);
    }
    let Some(m) = action.cyclic_exponent_order() else {
        return Err(Error::NonCyclicFactors(action.descriptor().to_string()));
    };
    if n == 0 {
        return Err(Error::Construction("at least one strand is required".into()));
    }
    let mut factors = Vec::new();
    for i in 1..=n {
        for p in 0..action.z_len() {
            if Some(p) == action.p_infinity() {
                continue;
            }
            factors.push(Factor::Diag { i, point: action.label(p).to_string() });
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for exponent in 0..m {
                factors.push(Factor::OffDiag { i, j, exponent });
            }
        }
    }
    Ok(factors)
}

/// Whether every component passes through one common point. In the cyclic
/// family this happens exactly when the marked set is the fixed pair `{0,∞}`
/// (for the trivial group: at most one finite marked point, which translates
/// away); any larger orbit, and any non-cyclic action, separates the
/// components.
pub fn is_central(action: &MarkedAction) -> bool {
    match action.cyclic_exponent_order() {
        Some(1) => action.z_len() <= 2,
        Some(_) => action.z_len() == 2,
        None => false,
    }
}

/// The meridian/generator bijection; the period matrix under this indexing
/// is the identity.
pub fn period_pairing(action: &MarkedAction, n: usize) -> Result<PeriodPairing> {
    let pres = Presentation::new(action.clone(), n)?;
    let pairs = (0..pres.generator_count())
        .map(|idx| {
            let generator = pres.generator(idx);
            (Meridian(generator), generator)
        })
        .collect();
    Ok(PeriodPairing { pairs, identity: true })
}

/// `x[..]` loop label mirroring the generator rendering.
pub fn meridian_label(action: &MarkedAction, meridian: &Meridian) -> String {
    match &meridian.0 {
        Generator::Off { i, j, g } => {
            format!("x[{i},{j};{}]", action.group().element_name(*g))
        }
        Generator::Diag { k, p } => format!("x[{k};{}]", action.label(*p)),
    }
}
