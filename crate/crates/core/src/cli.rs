//! Command-line front end. Every command parses its arguments, calls the
//! library and renders the result as text or JSON.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::axioms::validate;
use crate::conformance::{conformance_report, ClaimVerdict};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::extension::{
    closure_tower, eliminate_witness, extension_degree, irr_poly, is_almost_full, CandidateOrder, Embedded,
    ExtensionDegree, TowerStop, FALLBACK_DEGREE,
};
use crate::ideals::{enumerate_ideals, DEFAULT_MAX_CARRIER};
use crate::morphism::{classify_map, find_isomorphism, MorphismKind, MorphismTable, DEFAULT_ISO_BOUND};
use crate::poly::{
    effective_root_witness, effective_roots, enumerate_divisions, euclid_divide, evaluate, parse_poly, poly_prod,
    roots, Poly,
};
use crate::quotient::{class_names, irreducibility, make_quotient, ProductMode};
use crate::ring::FiniteSuperring;
use crate::structures::{builtin, parse_structure, serialize_structure};

#[derive(Parser, Debug)]
#[command(name = "multikit", version, about = "Finite superrings, superfields and their polynomial extensions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strict,
    Saturated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Canonical,
    Reverse,
}

#[derive(Args, Debug)]
struct ModeOpts {
    /// Product of classes: `strict` reduces products of representatives,
    /// `saturated` also ranges over higher-degree representatives.
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    mode: ModeArg,
    /// Representative degree bound for saturated products (default 2·deg p).
    #[arg(long)]
    saturation_degree: Option<usize>,
}

impl ModeOpts {
    fn product_mode(&self, p: &Poly) -> ProductMode {
        match (self.mode, self.saturation_degree) {
            (ModeArg::Strict, _) => ProductMode::Strict,
            (ModeArg::Saturated, Some(d)) => ProductMode::Saturated(d),
            (ModeArg::Saturated, None) => ProductMode::saturated_for(p),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every axiom and report the class of a structure.
    Validate { structure: String },
    /// Characteristic of a structure (0 when 1 + … + 1 never contains 0).
    Char { structure: String },
    /// Print the operation tables in `.msr` form.
    Table { structure: String },
    /// List the ideals with their prime, strongly prime and maximal flags.
    Ideals {
        structure: String,
        #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
        max_carrier: usize,
    },
    /// Classify a map between two structures.
    Morphism {
        domain: String,
        codomain: String,
        /// Map as `a:b,c:d,…` in element names.
        #[arg(long)]
        map: String,
    },
    /// Search for an isomorphism.
    Iso {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_ISO_BOUND)]
        bound: usize,
    },
    /// Polynomial arithmetic over a structure.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Irreducibility of a polynomial, with a factorization when reducible.
    Irred { structure: String, poly: String },
    /// Build the quotient F(p).
    Quotient {
        structure: String,
        poly: String,
        #[command(flatten)]
        mode: ModeOpts,
        /// Write the quotient as an `.msr` file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Algebraicity witnesses for every class of F(p) over F.
    Extend {
        structure: String,
        poly: String,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long, default_value_t = 3)]
        degree_bound: usize,
    },
    /// Adjoin roots until closed up to a degree or out of steps.
    Closure {
        structure: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[arg(long, default_value_t = 1)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = OrderArg::Canonical)]
        order: OrderArg,
        /// Directory for the step files and `manifest.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the registered claims about the builtin structures.
    Conformance {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum PolyCommand {
    /// Evaluate f at an element.
    Eval { structure: String, poly: String, at: String },
    /// The product envelope f·g.
    Mul { structure: String, left: String, right: String },
    /// A witness f ∈ q·g + r, or every such pair with `--all`.
    Div {
        structure: String,
        dividend: String,
        divisor: String,
        #[arg(long)]
        all: bool,
    },
    /// Roots and effective roots.
    Roots { structure: String, poly: String },
}

/// Exit status, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }

    fn failing(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }
}

/// Run the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("values serialize");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                code: if out.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: if is_usage(&e) { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::UnknownElement(_) | Error::Io(_) | Error::MapShape(_))
}

/// `builtin:<name>` or a path to an `.msr` file.
pub fn load_structure(spec: &str) -> Result<FiniteSuperring> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
            parse_structure(&text)
        }
    }
}

fn element(s: &FiniteSuperring, name: &str) -> Result<usize> {
    s.index_of(name)
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Validate { structure } => cmd_validate(&load_structure(structure)?),
        Command::Char { structure } => {
            let s = load_structure(structure)?;
            let c = s.characteristic();
            Ok(Output::new(
                format!("{}: characteristic {c}\n", s.name()),
                json!({ "structure": s.name(), "characteristic": c }),
            ))
        }
        Command::Table { structure } => {
            let s = load_structure(structure)?;
            Ok(Output::new(serialize_structure(&s), table_json(&s)))
        }
        Command::Ideals { structure, max_carrier } => cmd_ideals(&load_structure(structure)?, *max_carrier),
        Command::Morphism { domain, codomain, map } => {
            let (a, b) = (load_structure(domain)?, load_structure(codomain)?);
            cmd_morphism(&a, &b, &MorphismTable::parse(&a, &b, map)?)
        }
        Command::Iso { left, right, bound } => {
            let (a, b) = (load_structure(left)?, load_structure(right)?);
            let iso = find_isomorphism(&a, &b, *bound)?;
            let rendered = iso.as_ref().map(|m| m.render(&a, &b));
            let text = match &rendered {
                Some(m) => format!("{} ≅ {}: {m}\n", a.name(), b.name()),
                None => format!("{} and {} are not isomorphic\n", a.name(), b.name()),
            };
            Ok(Output::new(
                text,
                json!({ "left": a.name(), "right": b.name(), "isomorphism": rendered }),
            )
            .failing(iso.is_none()))
        }
        Command::Poly(p) => cmd_poly(p),
        Command::Irred { structure, poly } => {
            let s = load_structure(structure)?;
            let p = parse_poly(&s, poly)?;
            let v = irreducibility(&s, &p)?;
            let factors = v.factors.as_ref().map(|(g, h)| vec![g.render(&s), h.render(&s)]);
            let divisor = v.divisor.as_ref().map(|u| u.render(&s));
            let mut text = format!(
                "{} over {}: {}\n",
                p.render(&s),
                s.name(),
                if v.irreducible { "irreducible" } else { "reducible" }
            );
            if let Some(f) = &factors {
                text.push_str(&format!("  {} ∈ ({})·({})\n", p.render(&s), f[0], f[1]));
            }
            text.push_str(&format!(
                "  divisor check: {}\n",
                match &divisor {
                    Some(u) => format!("proper divisor {u}"),
                    None => "no proper divisor".into(),
                }
            ));
            Ok(Output::new(
                text,
                json!({
                    "structure": s.name(),
                    "poly": p.render(&s),
                    "irreducible": v.irreducible,
                    "factors": factors,
                    "irreducible_by_divisors": v.by_divisors,
                    "divisor": divisor,
                }),
            )
            .failing(!v.irreducible))
        }
        Command::Quotient { structure, poly, mode, out } => {
            let s = load_structure(structure)?;
            let p = parse_poly(&s, poly)?;
            cmd_quotient(&s, &p, mode.product_mode(&p), out.as_deref())
        }
        Command::Extend { structure, poly, mode, degree_bound } => {
            let s = load_structure(structure)?;
            let p = parse_poly(&s, poly)?;
            cmd_extend(&s, &p, mode.product_mode(&p), *degree_bound)
        }
        Command::Closure {
            structure,
            max_degree,
            max_steps,
            order,
            out,
        } => {
            let order = match order {
                OrderArg::Canonical => CandidateOrder::Canonical,
                OrderArg::Reverse => CandidateOrder::Reverse,
            };
            cmd_closure(&load_structure(structure)?, *max_degree, *max_steps, order, out.as_deref())
        }
        Command::Conformance { seed } => {
            let r = conformance_report(*seed)?;
            Ok(Output::new(r.to_text(), r.to_json()).failing(r.count(ClaimVerdict::Contradicted) > 0))
        }
    }
}

fn cmd_validate(s: &FiniteSuperring) -> Result<Output> {
    let r = validate(s);
    let mut text = format!("{} ({} elements)\n", s.name(), s.size());
    for (name, v) in r.entries() {
        match v.witness() {
            None => text.push_str(&format!("  {name:<20} pass\n")),
            Some(w) => text.push_str(&format!("  {name:<20} FAIL  {}\n", w.detail)),
        }
    }
    let mut json = r.to_json(s);
    json["implication_violation"] = json!(r.implication_violation());
    Ok(Output::new(text, json).failing(r.superring.is_fail()))
}

fn set_json(s: &FiniteSuperring, x: &ElemSet) -> Value {
    json!(s.set_names(x))
}

fn table_json(s: &FiniteSuperring) -> Value {
    let mut sum = serde_json::Map::new();
    let mut prod = serde_json::Map::new();
    for a in s.elements() {
        for b in s.elements() {
            let key = format!("{} {}", s.element_name(a), s.element_name(b));
            sum.insert(key.clone(), set_json(s, s.sum(a, b)));
            prod.insert(key, set_json(s, s.prod(a, b)));
        }
    }
    let neg: serde_json::Map<String, Value> = s
        .elements()
        .map(|a| (s.element_name(a).to_string(), json!(s.element_name(s.neg(a)))))
        .collect();
    json!({
        "structure": s.name(),
        "elements": s.names(),
        "zero": s.element_name(s.zero()),
        "one": s.element_name(s.one()),
        "neg": neg,
        "sum": sum,
        "prod": prod,
    })
}

fn cmd_ideals(s: &FiniteSuperring, max_carrier: usize) -> Result<Output> {
    let ideals = enumerate_ideals(s, max_carrier)?;
    let mut text = format!("{}: {} ideals\n", s.name(), ideals.len());
    let mut rows = Vec::new();
    for i in &ideals {
        let members = s.fmt_set(&i.members);
        let flags: Vec<&str> = [(i.prime, "prime"), (i.strongly_prime, "strongly-prime"), (i.maximal, "maximal")]
            .into_iter()
            .filter_map(|(b, n)| b.then_some(n))
            .collect();
        text.push_str(&format!("  {members} {}\n", flags.join(" ")));
        rows.push(json!({
            "members": s.set_names(&i.members),
            "prime": i.prime,
            "strongly_prime": i.strongly_prime,
            "maximal": i.maximal,
        }));
    }
    Ok(Output::new(text, json!({ "structure": s.name(), "ideals": rows })))
}

fn cmd_morphism(a: &FiniteSuperring, b: &FiniteSuperring, m: &MorphismTable) -> Result<Output> {
    let c = classify_map(a, b, m);
    let witness = match &c.kind {
        MorphismKind::NotMorphism(w) => Some(w.detail.clone()),
        _ => None,
    };
    let gap = c.fullness_gap.as_ref().map(|w| w.detail.clone());
    let mut text = format!("{} → {}: {}\n", a.name(), b.name(), c.kind.label());
    if let Some(w) = witness.as_ref().or(gap.as_ref()) {
        text.push_str(&format!("  {w}\n"));
    }
    text.push_str(&format!("  injective: {}, surjective: {}\n", c.injective, c.surjective));
    Ok(Output::new(
        text,
        json!({
            "domain": a.name(),
            "codomain": b.name(),
            "map": m.render(a, b),
            "kind": c.kind.label(),
            "witness": witness,
            "fullness_gap": gap,
            "injective": c.injective,
            "surjective": c.surjective,
        }),
    )
    .failing(!c.kind.is_morphism()))
}

fn cmd_poly(cmd: &PolyCommand) -> Result<Output> {
    match cmd {
        PolyCommand::Eval { structure, poly, at } => {
            let s = load_structure(structure)?;
            let f = parse_poly(&s, poly)?;
            let a = element(&s, at)?;
            let v = evaluate(&s, &f, a);
            Ok(Output::new(
                format!("{}({}) = {}\n", f.render(&s), at, s.fmt_set(&v)),
                json!({ "poly": f.render(&s), "at": at, "value": set_json(&s, &v), "root": v.contains(s.zero()) }),
            ))
        }
        PolyCommand::Mul { structure, left, right } => {
            let s = load_structure(structure)?;
            let (f, g) = (parse_poly(&s, left)?, parse_poly(&s, right)?);
            let env = poly_prod(&s, &f, &g);
            let coeffs: Vec<Value> = env.sets().iter().map(|c| set_json(&s, c)).collect();
            Ok(Output::new(
                format!("({})·({}) = {}\n", f.render(&s), g.render(&s), env.render(&s)),
                json!({
                    "left": f.render(&s),
                    "right": g.render(&s),
                    "coefficients": coeffs,
                    "members": env.cardinality().to_string(),
                }),
            ))
        }
        PolyCommand::Div {
            structure,
            dividend,
            divisor,
            all,
        } => {
            let s = load_structure(structure)?;
            let (f, g) = (parse_poly(&s, dividend)?, parse_poly(&s, divisor)?);
            if *all {
                let pairs = enumerate_divisions(&s, &f, &g)?;
                let mut text = format!("{} divisions of {} by {}\n", pairs.len(), f.render(&s), g.render(&s));
                let rows: Vec<Value> = pairs
                    .iter()
                    .map(|(q, r)| {
                        text.push_str(&format!("  q = {}, r = {}\n", q.render(&s), r.render(&s)));
                        json!({ "q": q.render(&s), "r": r.render(&s) })
                    })
                    .collect();
                return Ok(Output::new(text, json!({ "dividend": f.render(&s), "divisor": g.render(&s), "divisions": rows })));
            }
            let d = euclid_divide(&s, &f, &g)?;
            Ok(Output::new(
                format!(
                    "{} ∈ ({})·({}) + {}  [{}]\n",
                    f.render(&s),
                    d.q.render(&s),
                    g.render(&s),
                    d.r.render(&s),
                    d.route.label()
                ),
                json!({
                    "dividend": f.render(&s),
                    "divisor": g.render(&s),
                    "q": d.q.render(&s),
                    "r": d.r.render(&s),
                    "route": d.route.label(),
                }),
            ))
        }
        PolyCommand::Roots { structure, poly } => {
            let s = load_structure(structure)?;
            let f = parse_poly(&s, poly)?;
            let (all, eff) = (roots(&s, &f)?, effective_roots(&s, &f)?);
            let factors: serde_json::Map<String, Value> = eff
                .iter()
                .filter_map(|a| {
                    effective_root_witness(&s, &f, a).map(|q| (s.element_name(a).to_string(), json!(q.render(&s))))
                })
                .collect();
            Ok(Output::new(
                format!(
                    "{}: roots {}, effective roots {}\n",
                    f.render(&s),
                    s.fmt_set(&all),
                    s.fmt_set(&eff)
                ),
                json!({
                    "poly": f.render(&s),
                    "roots": set_json(&s, &all),
                    "effective_roots": set_json(&s, &eff),
                    "cofactors": factors,
                }),
            ))
        }
    }
}

fn cmd_quotient(s: &FiniteSuperring, p: &Poly, mode: ProductMode, out: Option<&Path>) -> Result<Output> {
    let q = make_quotient(s, p, mode)?;
    let root = q.root().map(|c| q.ring.element_name(c).to_string());
    let failing: Vec<&str> = q.report.entries().into_iter().filter(|(_, v)| v.is_fail()).map(|(n, _)| n).collect();
    let one_plus_x = parse_poly(s, "X+1").ok().and_then(|f| q.arith.class_of(&f).ok());
    let mut text = format!(
        "{} [{}]: {} classes\n  classes: {}\n  embedding: {}\n  root of {}: {}\n  superfield: {}\n  failing checks: {}\n",
        q.ring.name(),
        mode.label(),
        q.ring.size(),
        q.ring.names().join(", "),
        q.embedding_class.kind.label(),
        p.render(s),
        root.as_deref().unwrap_or("none"),
        q.report.superfield.is_pass(),
        if failing.is_empty() { "none".into() } else { failing.join(", ") },
    );
    if let Some(path) = out {
        std::fs::write(path, serialize_structure(&q.ring)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        text.push_str(&format!("  written to {}\n", path.display()));
    }
    Ok(Output::new(
        text,
        json!({
            "structure": q.ring.name(),
            "mode": mode.label(),
            "modulus": p.render(s),
            "classes": q.ring.names(),
            "embedding": q.embedding.render(s, &q.ring),
            "embedding_kind": q.embedding_class.kind.label(),
            "root": root,
            "one_plus_x_square": one_plus_x.map(|c| class_names(&q.arith, &q.arith.prod(c, c))),
            "report": q.report.to_json(&q.ring),
        }),
    ))
}

fn cmd_extend(s: &FiniteSuperring, p: &Poly, mode: ProductMode, degree_bound: usize) -> Result<Output> {
    let q = make_quotient(s, p, mode)?;
    let e = Embedded::new(s, &q.ring, &q.embedding)?;
    let gamma = q
        .root()
        .ok_or_else(|| Error::NoWitness(format!("root of {} in {}", p.render(s), q.ring.name())))?;
    let irr = irr_poly(&e, gamma, FALLBACK_DEGREE)?;
    let n = p.degree().expect("modulus has degree at least 1");
    let mut text = format!(
        "{} over {} [{}]\n  γ = {}, Irr = {}\n",
        q.ring.name(),
        s.name(),
        mode.label(),
        q.ring.element_name(gamma),
        irr.render(s)
    );
    let mut rows = Vec::new();
    let mut witnessed = 0;
    for c in q.ring.elements() {
        let mut coeffs = q.arith.class_poly(c).coeffs().to_vec();
        coeffs.resize(n, s.zero());
        let row = match eliminate_witness(&e, &irr, gamma, &coeffs) {
            Ok(el) => {
                witnessed += 1;
                text.push_str(&format!(
                    "  {:<10} {:<14} {}\n",
                    q.ring.element_name(c),
                    el.route.label(),
                    el.witness.render(s)
                ));
                json!({ "class": q.ring.element_name(c), "route": el.route.label(), "witness": el.witness.render(s) })
            }
            Err(err) => {
                text.push_str(&format!("  {:<10} {err}\n", q.ring.element_name(c)));
                json!({ "class": q.ring.element_name(c), "route": Value::Null, "witness": Value::Null })
            }
        };
        rows.push(row);
    }
    let gap = is_almost_full(&e, gamma, n - 1)?;
    let degree = match extension_degree(&e, degree_bound)? {
        ExtensionDegree::Finite(d) => json!(d),
        ExtensionDegree::AtLeast(d) => json!(format!(">={d}")),
    };
    text.push_str(&format!(
        "  almost full: {}\n  literal degree: {}\n",
        gap.is_none(),
        degree
    ));
    Ok(Output::new(
        text,
        json!({
            "structure": q.ring.name(),
            "base": s.name(),
            "mode": mode.label(),
            "gamma": q.ring.element_name(gamma),
            "irr": irr.render(s),
            "witnesses": rows,
            "witnessed": witnessed,
            "almost_full": gap.is_none(),
            "literal_degree": degree,
        }),
    )
    .failing(witnessed < q.ring.size()))
}

fn cmd_closure(
    s: &FiniteSuperring,
    max_degree: usize,
    max_steps: usize,
    order: CandidateOrder,
    out: Option<&Path>,
) -> Result<Output> {
    let t = closure_tower(s, max_degree, max_steps, order)?;
    let (files, manifest) = t.manifest();
    let mut text = format!("{} ({} elements)\n", s.name(), s.size());
    for (i, st) in t.steps.iter().enumerate() {
        text.push_str(&format!(
            "  step {}: adjoin a root of {} → {} ({} elements), root {}\n",
            i + 1,
            st.modulus.render(&st.base),
            st.extended.name(),
            st.extended.size(),
            st.extended.element_name(st.root)
        ));
    }
    text.push_str(&format!(
        "  top: {} ({} elements), {}\n",
        t.top().name(),
        t.top().size(),
        match t.stop {
            TowerStop::Closed => format!("closed up to degree {max_degree}"),
            TowerStop::Budget => "step budget reached".into(),
        }
    ));
    if let Some(dir) = out {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for (name, body) in &files {
            std::fs::write(dir.join(name), body).map_err(io)?;
        }
        let mut m = serde_json::to_string_pretty(&manifest).expect("values serialize");
        m.push('\n');
        std::fs::write(dir.join("manifest.json"), m).map_err(io)?;
        text.push_str(&format!("  written to {}\n", dir.display()));
    }
    Ok(Output::new(text, manifest))
}
