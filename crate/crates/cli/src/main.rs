//! `orbitconf`: every pipeline of the library behind one executable.
//!
//! Exit codes: 0 when the command succeeds and every check it ran passed,
//! 1 on usage errors (including invalid descriptors and budget refusals),
//! 2 when a mathematical check ran to completion and failed.
//!
//! Output is byte-identical across runs for identical invocations. JSON
//! payloads carry a versioned `schema` field.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use orbitconf::algebra::{self, Monomial};
use orbitconf::hypersurface;
use orbitconf::presentation::{export_presentation, RelatorData};
use orbitconf::series;
use orbitconf::verify::{self, RowAssembly};
use orbitconf::{Budget, MarkedAction, Presentation, Rel3Variant};

#[derive(Parser)]
#[command(name = "orbitconf", version, about = "Orbit configuration spaces of marked spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a group descriptor and show its marked points and orbits.
    DescribeGroup {
        /// Group and marking, e.g. `cyclic:3`, `dihedral:2+orbits:1`, `sphere`.
        #[arg(long)]
        group: String,
        #[command(flatten)]
        emit: Emit,
    },
    /// Export the quadratic presentation for a configuration.
    Presentation {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t)]
        rel3_variant: VariantFlag,
        #[command(flatten)]
        emit: Emit,
    },
    /// List the basis monomials of one degree.
    Basis {
        #[command(flatten)]
        target: Target,
        /// Homogeneous degree, at most the strand count.
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// Poincaré polynomial and Betti numbers.
    Betti {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        emit: Emit,
    },
    /// Straighten a product expression to its normal form.
    Multiply {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t)]
        rel3_variant: VariantFlag,
        /// Expression over `w`-atoms, e.g. `w[1,2;g0]^w[1,2;g1] - 2 w[1;0]^w[2;0]`.
        #[arg(value_name = "EXPR")]
        expression: String,
        #[command(flatten)]
        emit: Emit,
    },
    /// Cross-check the claimed basis against independent exact elimination.
    VerifyBasis {
        #[command(flatten)]
        target: Target,
        /// Highest degree to check; defaults to the strand count.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        rel3_variant: VariantFlag,
        /// Row assembly strategy for the relation matrices.
        #[arg(long, value_enum, default_value_t)]
        assembly: AssemblyFlag,
        /// Refuse degrees with more monomials than this.
        #[arg(long)]
        budget_columns: Option<usize>,
        /// Refuse degrees with more relation rows than this.
        #[arg(long)]
        budget_rows: Option<usize>,
        /// Skip the integer invariant factor computation.
        #[arg(long)]
        skip_invariants: bool,
        #[command(flatten)]
        emit: Emit,
    },
    /// Lower central series ranks and the product identity.
    Lcs {
        #[command(flatten)]
        target: Target,
        /// Check the identity modulo t^(imax+1).
        #[arg(long, default_value_t = 12)]
        imax: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// Discriminant hypersurface components, defining factors and meridians.
    Hypersurface {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        emit: Emit,
    },
    /// Series and fundamental group profile of the unmarked sphere.
    Sphere {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Check the tower identity modulo t^(imax+1).
        #[arg(long, default_value_t = 12)]
        imax: usize,
        #[command(flatten)]
        emit: Emit,
    },
}

/// Configuration selector shared by most commands.
#[derive(Args)]
struct Target {
    /// Group and marking, e.g. `cyclic:3`, `dihedral:2+orbits:1`, `trivial:2`.
    #[arg(long)]
    group: String,
    /// Number of strands.
    #[arg(long)]
    n: usize,
    /// Label of the marked point to use as the basepoint p∞.
    #[arg(long)]
    p_infinity: Option<String>,
}

impl Target {
    fn action(&self) -> orbitconf::Result<MarkedAction> {
        let action = MarkedAction::parse(&self.group)?;
        match &self.p_infinity {
            Some(label) => action.with_p_infinity(label),
            None => Ok(action),
        }
    }

    fn presentation(&self, variant: Rel3Variant) -> orbitconf::Result<Presentation> {
        Presentation::with_variant(self.action()?, self.n, variant)
    }
}

#[derive(Args)]
struct Emit {
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum VariantFlag {
    /// The self-consistent cross term h·g⁻¹.
    #[default]
    Derived,
    /// The cross term h⁻¹·g as printed in the source presentation.
    Printed,
}

impl VariantFlag {
    fn variant(self) -> Rel3Variant {
        match self {
            VariantFlag::Derived => Rel3Variant::HgInv,
            VariantFlag::Printed => Rel3Variant::HInvG,
        }
    }

    fn name(self) -> &'static str {
        match self {
            VariantFlag::Derived => "derived",
            VariantFlag::Printed => "printed",
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum AssemblyFlag {
    /// Relator wedge cofactor rows, one batch per degree.
    #[default]
    Direct,
    /// Degree d rows obtained from echelon rows of degree d-1.
    Iterated,
}

impl AssemblyFlag {
    fn assembly(self) -> RowAssembly {
        match self {
            AssemblyFlag::Direct => RowAssembly::Direct,
            AssemblyFlag::Iterated => RowAssembly::Iterated,
        }
    }

    fn name(self) -> &'static str {
        match self {
            AssemblyFlag::Direct => "direct",
            AssemblyFlag::Iterated => "iterated",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (emit, result) = dispatch(cli.command);
    let report = match result {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_body(&emit, &report.body) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.checks_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

struct Report {
    body: String,
    checks_passed: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, checks_passed: true }
    }
}

fn dispatch(command: Command) -> (Emit, orbitconf::Result<Report>) {
    match command {
        Command::DescribeGroup { group, emit } => {
            let r = describe_group(&group, emit.format);
            (emit, r)
        }
        Command::Presentation { target, rel3_variant, emit } => {
            let r = presentation_cmd(&target, rel3_variant, emit.format);
            (emit, r)
        }
        Command::Basis { target, degree, emit } => {
            let r = basis_cmd(&target, degree, emit.format);
            (emit, r)
        }
        Command::Betti { target, emit } => {
            let r = betti_cmd(&target, emit.format);
            (emit, r)
        }
        Command::Multiply { target, rel3_variant, expression, emit } => {
            let r = multiply_cmd(&target, rel3_variant, &expression, emit.format);
            (emit, r)
        }
        Command::VerifyBasis {
            target,
            degree,
            rel3_variant,
            assembly,
            budget_columns,
            budget_rows,
            skip_invariants,
            emit,
        } => {
            let mut budget = Budget::default();
            if let Some(c) = budget_columns {
                budget.max_columns = c;
            }
            if let Some(r) = budget_rows {
                budget.max_rows = r;
            }
            let r = verify_cmd(
                &target,
                degree,
                rel3_variant,
                assembly,
                &budget,
                !skip_invariants,
                emit.format,
            );
            (emit, r)
        }
        Command::Lcs { target, imax, emit } => {
            let r = lcs_cmd(&target, imax, emit.format);
            (emit, r)
        }
        Command::Hypersurface { target, emit } => {
            let r = hypersurface_cmd(&target, emit.format);
            (emit, r)
        }
        Command::Sphere { n, imax, emit } => {
            let r = sphere_cmd(n, imax, emit.format);
            (emit, r)
        }
    }
}

fn write_body(emit: &Emit, body: &str) -> std::io::Result<()> {
    match &emit.output {
        Some(path) => std::fs::write(path, format!("{body}\n"))
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            out.write_all(body.as_bytes())?;
            out.write_all(b"\n")
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn monomial_text(pres: &Presentation, m: &Monomial) -> String {
    m.0.iter().map(|&idx| pres.render_generator(idx)).collect::<Vec<_>>().join("^")
}

// ---- describe-group ----------------------------------------------------

#[derive(Serialize)]
struct GroupReport {
    schema: &'static str,
    group: String,
    order: usize,
    valid: bool,
    violations: Vec<String>,
    points: Vec<String>,
    p_infinity: Option<String>,
    orbits: Vec<Vec<String>>,
    irregular_points: Vec<String>,
}

fn describe_group(group: &str, format: Format) -> orbitconf::Result<Report> {
    let action = MarkedAction::parse(group)?;
    let report = action.validate();
    let label = |p: usize| action.label(p).to_string();
    let dto = GroupReport {
        schema: "orbitconf/describe-group/v1",
        group: action.descriptor().to_string(),
        order: action.group().order(),
        valid: report.is_ok(),
        violations: report.violations.iter().map(|v| v.to_string()).collect(),
        points: action.z_labels().to_vec(),
        p_infinity: action.p_infinity().map(label),
        orbits: action.orbits().iter().map(|orbit| orbit.iter().copied().map(label).collect()).collect(),
        irregular_points: action.irregular_points().into_iter().map(label).collect(),
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = format!(
                "group {} (order {}): {}\n",
                dto.group,
                dto.order,
                if dto.valid { "valid" } else { "INVALID" }
            );
            for v in &dto.violations {
                s.push_str(&format!("  violation: {v}\n"));
            }
            let or_none = |items: &[String], sep: &str| {
                if items.is_empty() { "(none)".to_string() } else { items.join(sep) }
            };
            s.push_str(&format!("marked points ({}): {}\n", dto.points.len(), or_none(&dto.points, ", ")));
            if let Some(p) = &dto.p_infinity {
                s.push_str(&format!("basepoint: {p}\n"));
            }
            let orbits: Vec<String> = dto.orbits.iter().map(|o| format!("{{{}}}", o.join(", "))).collect();
            s.push_str(&format!("orbits ({}): {}\n", orbits.len(), or_none(&orbits, " ")));
            s.push_str(&format!("irregular points: {}", or_none(&dto.irregular_points, ", ")));
            s
        }
    };
    Ok(Report { body, checks_passed: dto.valid })
}

// ---- presentation ------------------------------------------------------

fn presentation_cmd(target: &Target, variant: VariantFlag, format: Format) -> orbitconf::Result<Report> {
    let pres = target.presentation(variant.variant())?;
    let body = match format {
        Format::Json => export_presentation(&pres),
        Format::Text => {
            let mut counts = [0usize; 4];
            for rel in pres.relators() {
                let slot = match rel.data {
                    RelatorData::DiagPair { .. } => 0,
                    RelatorData::MixedPair { .. } => 1,
                    RelatorData::SharedTarget { .. } => 2,
                    RelatorData::ParallelPair { .. } => 3,
                };
                counts[slot] += 1;
            }
            let mut s = format!(
                "presentation {} n={} (rel3 {})\ngenerators ({}):\n",
                pres.action().descriptor(),
                pres.n(),
                variant.name(),
                pres.generator_count(),
            );
            for idx in 0..pres.generator_count() {
                s.push_str(&format!("  {idx}: {}\n", pres.render_generator(idx)));
            }
            s.push_str(&format!(
                "relators ({}): {} diagonal-pair, {} mixed-pair, {} shared-target, {} parallel-pair",
                pres.relators().len(),
                counts[0],
                counts[1],
                counts[2],
                counts[3],
            ));
            s
        }
    };
    Ok(Report::ok(body))
}

// ---- basis -------------------------------------------------------------

#[derive(Serialize)]
struct BasisReport {
    schema: &'static str,
    group: String,
    n: usize,
    degree: usize,
    dimension: String,
    monomials: Vec<String>,
}

fn basis_cmd(target: &Target, degree: usize, format: Format) -> orbitconf::Result<Report> {
    let pres = target.presentation(Rel3Variant::default())?;
    let monomials = algebra::basis(&pres, degree)?;
    let dto = BasisReport {
        schema: "orbitconf/basis/v1",
        group: pres.action().descriptor().to_string(),
        n: pres.n(),
        degree,
        dimension: algebra::dimension(&pres, degree).to_string(),
        monomials: monomials.iter().map(|m| monomial_text(&pres, m)).collect(),
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = format!(
                "basis {} n={} degree {}: {} monomials\n",
                dto.group, dto.n, dto.degree, dto.dimension
            );
            s.push_str(&dto.monomials.join("\n"));
            s.trim_end().to_string()
        }
    };
    Ok(Report::ok(body))
}

// ---- betti -------------------------------------------------------------

#[derive(Serialize)]
struct BettiReport {
    schema: &'static str,
    group: String,
    n: usize,
    poincare: String,
    betti: Vec<String>,
}

fn betti_cmd(target: &Target, format: Format) -> orbitconf::Result<Report> {
    let action = target.action()?;
    let poly = series::poincare_polynomial(&action, target.n)?;
    let dto = BettiReport {
        schema: "orbitconf/betti/v1",
        group: action.descriptor().to_string(),
        n: target.n,
        poincare: poly.to_string(),
        betti: poly.coeffs().iter().map(|c| c.to_string()).collect(),
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => format!("{}\nbetti: {}", dto.poincare, dto.betti.join(" ")),
    };
    Ok(Report::ok(body))
}

// ---- multiply ----------------------------------------------------------

#[derive(Serialize)]
struct MultiplyReport {
    schema: &'static str,
    group: String,
    n: usize,
    rel3_variant: &'static str,
    input: String,
    normal_form: String,
    terms: Vec<TermDto>,
}

#[derive(Serialize)]
struct TermDto {
    monomial: String,
    coeff: String,
}

fn multiply_cmd(
    target: &Target,
    variant: VariantFlag,
    expression: &str,
    format: Format,
) -> orbitconf::Result<Report> {
    let pres = target.presentation(variant.variant())?;
    let result = algebra::parse_element(&pres, expression)?;
    let dto = MultiplyReport {
        schema: "orbitconf/multiply/v1",
        group: pres.action().descriptor().to_string(),
        n: pres.n(),
        rel3_variant: variant.name(),
        input: expression.to_string(),
        normal_form: algebra::render_element(&pres, &result),
        terms: result
            .terms()
            .map(|(m, c)| TermDto { monomial: monomial_text(&pres, m), coeff: c.to_string() })
            .collect(),
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => dto.normal_form.clone(),
    };
    Ok(Report::ok(body))
}

// ---- verify-basis ------------------------------------------------------

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    group: String,
    n: usize,
    max_degree: usize,
    assembly: &'static str,
    rel3_variant: &'static str,
    max_columns: usize,
    max_rows: usize,
    degrees: Vec<DegreeDto>,
    pass: bool,
}

#[derive(Serialize)]
struct DegreeDto {
    degree: usize,
    free_monomials: usize,
    ideal_rank: usize,
    quotient_dim: usize,
    expected_dim: String,
    pivots_avoid_basis: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_factors: Option<Vec<String>>,
    pass: bool,
}

fn verify_cmd(
    target: &Target,
    degree: Option<usize>,
    variant: VariantFlag,
    assembly: AssemblyFlag,
    budget: &Budget,
    want_invariants: bool,
    format: Format,
) -> orbitconf::Result<Report> {
    let pres = target.presentation(variant.variant())?;
    let max_degree = degree.unwrap_or(pres.n());
    let check = verify::check_basis(&pres, max_degree, assembly.assembly(), budget, want_invariants)?;
    let dto = VerifyReport {
        schema: "orbitconf/verify-basis/v1",
        group: pres.action().descriptor().to_string(),
        n: pres.n(),
        max_degree,
        assembly: assembly.name(),
        rel3_variant: variant.name(),
        max_columns: budget.max_columns,
        max_rows: budget.max_rows,
        degrees: check
            .degrees
            .iter()
            .map(|d| DegreeDto {
                degree: d.degree,
                free_monomials: d.free_monomials,
                ideal_rank: d.ideal_rank,
                quotient_dim: d.quotient_dim,
                expected_dim: d.expected_dim.to_string(),
                pivots_avoid_basis: d.pivots_avoid_basis,
                invariant_factors: d
                    .invariant_factors
                    .as_ref()
                    .map(|fs| fs.iter().map(|f| f.to_string()).collect()),
                pass: d.pass,
            })
            .collect(),
        pass: check.pass,
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = String::new();
            for d in &dto.degrees {
                s.push_str(&format!(
                    "degree {}: free {}, ideal rank {}, quotient {}, expected {}",
                    d.degree, d.free_monomials, d.ideal_rank, d.quotient_dim, d.expected_dim
                ));
                if let Some(fs) = &d.invariant_factors {
                    let unit = fs.iter().all(|f| f == "1");
                    s.push_str(if unit { ", invariants unit" } else { ", invariants NON-UNIT" });
                }
                s.push_str(if d.pass { ": pass\n" } else { ": FAIL\n" });
            }
            s.push_str(&format!(
                "verify-basis {} n={}: {}",
                dto.group,
                dto.n,
                if dto.pass { "PASS" } else { "FAIL" }
            ));
            s
        }
    };
    Ok(Report { body, checks_passed: dto.pass })
}

// ---- lcs ---------------------------------------------------------------

#[derive(Serialize)]
struct LcsReport {
    schema: &'static str,
    group: String,
    n: usize,
    i_max: usize,
    alpha: Vec<u64>,
    phi: Vec<String>,
    identity_ok: bool,
}

fn lcs_cmd(target: &Target, imax: usize, format: Format) -> orbitconf::Result<Report> {
    let action = target.action()?;
    let identity = series::lcs_identity(&action, target.n, imax)?;
    let dto = LcsReport {
        schema: "orbitconf/lcs/v1",
        group: action.descriptor().to_string(),
        n: target.n,
        i_max: imax,
        alpha: identity.profile.clone(),
        phi: identity.ranks.iter().map(|r| r.to_string()).collect(),
        identity_ok: identity.pass,
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = String::new();
            for (i, phi) in dto.phi.iter().enumerate() {
                s.push_str(&format!("phi_{} = {phi}\n", i + 1));
            }
            s.push_str(&format!("identity_ok = {}", dto.identity_ok));
            s
        }
    };
    Ok(Report { body, checks_passed: dto.identity_ok })
}

// ---- hypersurface ------------------------------------------------------

#[derive(Serialize)]
struct HypersurfaceReport {
    schema: &'static str,
    group: String,
    n: usize,
    component_count: usize,
    components: Vec<ComponentDto>,
    central: bool,
    linear: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    period_pairing: &'static str,
}

#[derive(Serialize)]
struct ComponentDto {
    meridian: String,
    label: String,
}

fn hypersurface_cmd(target: &Target, format: Format) -> orbitconf::Result<Report> {
    let action = target.action()?;
    let inventory = hypersurface::components(&action, target.n)?;
    let pairing = hypersurface::period_pairing(&action, target.n)?;
    let components: Vec<ComponentDto> = inventory
        .components
        .iter()
        .zip(&pairing.pairs)
        .map(|(c, (m, _))| ComponentDto {
            meridian: hypersurface::meridian_label(&action, m),
            label: c.label.clone(),
        })
        .collect();
    let (factors, note) = match hypersurface::defining_factors(&action, target.n) {
        Ok(fs) => {
            let rendered = fs.iter().map(|f| hypersurface::render_factor(&action, f)).collect();
            (Some(rendered), None)
        }
        Err(e @ orbitconf::Error::NonCyclicFactors(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let dto = HypersurfaceReport {
        schema: "orbitconf/hypersurface/v1",
        group: action.descriptor().to_string(),
        n: target.n,
        component_count: inventory.total(),
        components,
        central: hypersurface::is_central(&action),
        linear: factors.is_some(),
        factors,
        note,
        period_pairing: "identity",
    };
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = format!("hypersurface {} n={}\ncomponents ({}):\n", dto.group, dto.n, dto.component_count);
            for c in &dto.components {
                s.push_str(&format!("  {}  {}\n", c.meridian, c.label));
            }
            match &dto.factors {
                Some(fs) => {
                    let product: String = fs.iter().map(|f| format!("({f})")).collect();
                    s.push_str(&format!("f = {product}\n"));
                }
                None => {
                    if let Some(note) = &dto.note {
                        s.push_str(&format!("{note}\n"));
                    }
                }
            }
            s.push_str(&format!("central: {}\n", if dto.central { "yes" } else { "no" }));
            s.push_str("period pairing: identity");
            s
        }
    };
    Ok(Report::ok(body))
}

// ---- sphere ------------------------------------------------------------

#[derive(Serialize)]
struct SphereReport {
    schema: &'static str,
    n: usize,
    poincare: String,
    central_torsion: bool,
    tower: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lcs: Option<SphereLcsDto>,
}

#[derive(Serialize)]
struct SphereLcsDto {
    i_max: usize,
    phi: Vec<String>,
    identity_ok: bool,
}

fn sphere_cmd(n: usize, imax: usize, format: Format) -> orbitconf::Result<Report> {
    let poly = series::poincare_sphere(n)?;
    let pi1 = series::sphere_fundamental_group(n)?;
    let lcs = if n >= 3 {
        let identity = series::sphere_lcs_identity(n, imax)?;
        Some(SphereLcsDto {
            i_max: imax,
            phi: identity.ranks.iter().map(|r| r.to_string()).collect(),
            identity_ok: identity.pass,
        })
    } else {
        None
    };
    let dto = SphereReport {
        schema: "orbitconf/sphere/v1",
        n,
        poincare: poly.to_string(),
        central_torsion: pi1.central_torsion,
        tower: pi1.tower.clone(),
        lcs,
    };
    let checks_passed = dto.lcs.as_ref().is_none_or(|l| l.identity_ok);
    let body = match format {
        Format::Json => to_json(&dto),
        Format::Text => {
            let mut s = format!("sphere n={}\nP = {}\n", dto.n, dto.poincare);
            if dto.central_torsion {
                let tower: Vec<String> = dto.tower.iter().map(|r| r.to_string()).collect();
                s.push_str(&format!("pi_1: central Z/2 factor, free tower ranks [{}]\n", tower.join(", ")));
            } else {
                s.push_str("pi_1: trivial\n");
            }
            match &dto.lcs {
                Some(l) => s.push_str(&format!(
                    "lcs identity mod t^{}: {}",
                    l.i_max + 1,
                    if l.identity_ok { "ok" } else { "FAIL" }
                )),
                None => s.push_str("lcs: trivial"),
            }
            s
        }
    };
    Ok(Report { body, checks_passed })
}
