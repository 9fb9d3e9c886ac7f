//! Command-line front end.
//!
//! Every subcommand reads its inputs from files, runs one library operation
//! and prints either a human-readable report or, with `--format machine`,
//! `key=value` lines. Exit status is 0 on success, 1 on a domain error (the
//! error's name is printed) and 2 when an input cannot be parsed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::Qp;
use crate::ginzburg::{ginzburg, skew_ginzburg_compare};
use crate::groupoid::{classify_bands, classify_strings, report_bands, report_strings, Covering};
use crate::involution::{any_choice, Involution};
use crate::io::{parse_qp, parse_rep, parse_tri, write_qp, write_tri, ParseError};
use crate::linalg::{fmt_q, parse_q, Q};
use crate::reps::{
    band_module, decompose_seeded, is_isomorphic, parse_word, string_module, CoverFunctors, Representation,
    DEFAULT_DIMENSION_BOUND, DEFAULT_SEED,
};
use crate::skew::skew_qp;
use crate::surface::{double_cover, Triangulation};

#[derive(Debug, Parser)]
#[command(name = "qpskew", version, about = "Skew group algebras of quivers with potential and surface double covers")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a triangulation and print its topological invariants.
    Validate { file: PathBuf },
    /// Print the adjacency quiver with potential of a triangulation.
    Qp { file: PathBuf },
    /// Skew a QP (`.qp` with sigma lines, or `.tri`) by its order-2 action.
    Skew {
        file: PathBuf,
        /// Separate file of `sigma_vertex`/`sigma_arrow` lines.
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Build the double cover of a triangulation.
    Cover { file: PathBuf },
    /// Check d² = 0 and compare the skewed Ginzburg algebra with the Ginzburg algebra of the skew QP.
    GinzburgCheck {
        file: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Build a string module from a walk given by its arcs.
    String {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Build a band module from a closed walk and a parameter.
    Band {
        file: PathBuf,
        #[command(flatten)]
        module: ModuleArgs,
        /// Band parameter, an integer or `p/q`.
        #[arg(long, value_parser = parse_rational)]
        lambda: Q,
        /// Size of the Jordan block.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// A square root of λ, used where a summand needs one.
        #[arg(long = "lambda-sqrt", value_parser = parse_rational)]
        lambda_sqrt: Option<Q>,
    },
    /// Induce a representation from the base to the cover or back.
    Induce {
        file: PathBuf,
        rep: PathBuf,
        /// The representation lives on the cover.
        #[arg(long)]
        cover: bool,
    },
    /// Split a representation into indecomposable summands.
    Decompose {
        file: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        cover: bool,
        /// Seed for the random combinations tried while splitting.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decide whether two representations are isomorphic.
    Isiso {
        file: PathBuf,
        rep1: PathBuf,
        rep2: PathBuf,
        #[arg(long)]
        cover: bool,
    },
    /// Enumerate orbifold strings or bands up to a length.
    Classify {
        file: PathBuf,
        /// List string classes.
        #[arg(long)]
        strings: bool,
        /// List band classes.
        #[arg(long)]
        bands: bool,
        #[arg(long = "max-len", default_value_t = 3)]
        max_len: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct ModuleArgs {
    /// Arcs visited, separated by commas or spaces.
    #[arg(long)]
    pub word: String,
    /// Apply the induction functor to the other side.
    #[arg(long)]
    pub induce: bool,
    /// Decompose the final module.
    #[arg(long)]
    pub decompose: bool,
    /// Seed for the random combinations tried while splitting.
    #[arg(long)]
    pub seed: Option<u64>,
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("not a rational number: {s}"))
}

/// A failure and the exit status it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Domain { name: String, msg: String },
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    pub fn report(&self) -> String {
        match self {
            CliError::Parse(m) => format!("parse error: {m}"),
            CliError::Domain { name, msg } => format!("error: {name}: {msg}"),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain { name: e.name().to_string(), msg: e.to_string() }
            }
        }
    )*};
}

domain_from!(
    crate::surface::SurfaceError,
    crate::skew::SkewError,
    crate::reps::RepError,
    crate::ginzburg::GinzburgError,
    crate::groupoid::GroupoidError,
    crate::involution::InvolutionError
);

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn domain(name: &str, msg: impl Into<String>) -> CliError {
    CliError::Domain { name: name.into(), msg: msg.into() }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_tri(path: &FsPath) -> Result<Triangulation, CliError> {
    Ok(parse_tri(&read(path)?)?)
}

/// A QP with its action, from a `.tri` file or a `.qp` file plus action.
fn load_qp_with_action(path: &FsPath, action: Option<&PathBuf>) -> Result<(Qp, Involution), CliError> {
    if path.extension().is_some_and(|e| e == "tri") {
        let adj = load_tri(path)?.adjacency_qp()?;
        return Ok((adj.qp, adj.sigma));
    }
    let (qp, inline) = parse_qp(&read(path)?)?;
    let act = match action {
        Some(a) => crate::io::parse_action(&read(a)?, &qp.quiver)?,
        None => inline.ok_or_else(|| CliError::Parse("no action given: add sigma lines or --action".into()))?,
    };
    Ok((qp, act))
}

/// Output lines in either format.
struct Out {
    format: Format,
    lines: Vec<String>,
}

impl Out {
    fn text(&mut self, s: impl Into<String>) {
        if self.format == Format::Text {
            self.lines.push(s.into());
        }
    }

    fn kv(&mut self, k: &str, v: impl std::fmt::Display) {
        if self.format == Format::Machine {
            self.lines.push(format!("{k}={v}"));
        }
    }

    /// The same fact in both formats.
    fn both(&mut self, k: &str, v: impl std::fmt::Display) {
        match self.format {
            Format::Text => self.lines.push(format!("{k}: {v}")),
            Format::Machine => self.lines.push(format!("{k}={v}")),
        }
    }

    fn qp(&mut self, prefix: &str, qp: &Qp) {
        self.text(format!("vertices: {}", qp.quiver.vertices().join(" ")));
        for a in qp.quiver.arrows() {
            self.text(format!("arrow {}: {} -> {}", a.id, a.src, a.tgt));
        }
        self.text(format!("S = {}", qp.potential));
        self.kv(&format!("{prefix}.vertices"), qp.quiver.vertices().join(","));
        for a in qp.quiver.arrows() {
            self.kv(&format!("{prefix}.arrow.{}", a.id), format!("{}->{}", a.src, a.tgt));
        }
        self.kv(&format!("{prefix}.potential"), &qp.potential);
    }

    fn rep(&mut self, prefix: &str, r: &Representation) {
        self.text(r.to_string().trim_end().to_string());
        let dv: Vec<String> = r.dims().iter().map(|(v, d)| format!("{v}:{d}")).collect();
        self.kv(&format!("{prefix}.dims"), dv.join(","));
        for (a, m) in r.maps() {
            if m.rows() == 0 || m.cols() == 0 {
                continue;
            }
            let rows: Vec<String> =
                (0..m.rows()).map(|i| (0..m.cols()).map(|j| fmt_q(m.get(i, j))).collect::<Vec<_>>().join(" ")).collect();
            self.kv(&format!("{prefix}.map.{a}"), rows.join(";"));
        }
    }

    fn summands(&mut self, parts: &[Representation]) {
        self.both("summands", parts.len());
        for (i, p) in parts.iter().enumerate() {
            let dv: Vec<String> = p.dims().iter().filter(|(_, d)| **d > 0).map(|(v, d)| format!("{v}:{d}")).collect();
            self.text(format!("summand {i}: {}", dv.join(" ")));
            self.rep(&format!("summand.{i}"), p);
        }
    }
}

/// Runs the command line and returns the exit status and the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let mut out = Out { format: cli.format, lines: Vec::new() };
    match execute(&cli.command, &mut out) {
        Ok(()) => (0, out.lines.join("\n")),
        Err(e) => (e.code(), e.report()),
    }
}

fn execute(cmd: &Command, out: &mut Out) -> Result<(), CliError> {
    match cmd {
        Command::Validate { file } => {
            let info = load_tri(file)?.validate()?;
            out.both("genus", info.genus);
            out.both("boundary", info.boundary_components);
            let mpb: Vec<String> = info.marked_per_boundary.iter().map(|x| x.to_string()).collect();
            out.both("marked_per_boundary", mpb.join(","));
            out.both("punctures", info.punctures);
            out.both("arcs", info.arcs);
            out.both("euler", info.euler_characteristic);
        }
        Command::Qp { file } => {
            let adj = load_tri(file)?.adjacency_qp()?;
            out.qp("qp", &adj.qp);
            let (vs, _) = adj.sigma.swaps();
            for (a, b) in vs {
                out.text(format!("sigma {a} <-> {b}"));
                out.kv(&format!("sigma.{a}"), b);
            }
        }
        Command::Skew { file, action } => {
            let (qp, s) = load_qp_with_action(file, action.as_ref())?;
            let choice = any_choice(&qp.quiver, &s)?;
            let ctx = skew_qp(&qp, &s, &choice)?;
            let g = ctx.qp_g().expect("skew of a QP carries a potential");
            if out.format == Format::Text {
                out.lines.push(write_qp(&g, None));
            }
            out.kv("skew.vertices", g.quiver.vertices().join(","));
            for a in g.quiver.arrows() {
                out.kv(&format!("skew.arrow.{}", a.id), format!("{}->{}", a.src, a.tgt));
            }
            out.kv("skew.potential", &g.potential);
            for (v, p) in &ctx.vertex_prov {
                out.text(format!("# vertex {v} from {}{}", p.base, p.sign.suffix()));
                out.kv(&format!("prov.vertex.{v}"), format!("{}{}", p.base, p.sign.suffix()));
            }
            for (a, p) in &ctx.arrow_prov {
                out.text(format!("# arrow {a} from {}{} ({:?})", p.rep, p.sign.suffix(), p.case));
                out.kv(&format!("prov.arrow.{a}"), format!("{}{}", p.rep, p.sign.suffix()));
            }
        }
        Command::Cover { file } => {
            let t = load_tri(file)?;
            let dc = double_cover(&t)?;
            if out.format == Format::Text {
                out.lines.push(write_tri(&dc.triangulation));
            }
            out.qp("cover", &dc.qp);
            for (k, v) in &dc.sigma {
                if k <= v {
                    out.text(format!("sigma {k} <-> {v}"));
                    out.kv(&format!("sigma.{k}"), v);
                }
            }
            for (a, c) in dc.rescaling() {
                out.both(&format!("rescale.{a}"), fmt_q(&c));
            }
            if !t.self_folded.is_empty() {
                let info = dc.triangulation.validate()?;
                out.both("cover.genus", info.genus);
                out.both("cover.boundary", info.boundary_components);
                out.both("cover.arcs", info.arcs);
            }
        }
        Command::GinzburgCheck { file, action } => {
            let (qp, s) = load_qp_with_action(file, action.as_ref())?;
            let gz = ginzburg(&qp)?;
            let defects = gz.square_defects();
            if let Some(g) = defects.first() {
                return Err(domain("DifferentialNotSquareZero", format!("d² ≠ 0 on {g}")));
            }
            out.both("d_squared", "0");
            let choice = any_choice(&qp.quiver, &s)?;
            let report = skew_ginzburg_compare(&qp, &s, &choice)?;
            for r in &report.rows {
                out.kv(&format!("zeta.{}", r.generator), fmt_q(&r.scalar));
            }
            out.text(report.to_string());
            out.kv("generators", report.rows.len());
        }
        Command::String { file, module } => {
            let cf = CoverFunctors::new(&load_tri(file)?)?;
            let word = parse_word(&module.word);
            let on_cover = word_on_cover(&cf, &word);
            let qp = if on_cover { cf.cover_qp() } else { cf.base_qp() };
            let m = string_module(qp, &word)?;
            finish_module(&cf, m, on_cover, module, out)?;
        }
        Command::Band { file, module, lambda, power, lambda_sqrt } => {
            let cf = CoverFunctors::new(&load_tri(file)?)?;
            let word = parse_word(&module.word);
            let on_cover = word_on_cover(&cf, &word);
            let qp = if on_cover { cf.cover_qp() } else { cf.base_qp() };
            if let Some(r) = lambda_sqrt {
                if &(r * r) != lambda {
                    return Err(domain("FieldObstruction", format!("{} is not a square root of {}", fmt_q(r), fmt_q(lambda))));
                }
                out.both("lambda_sqrt", fmt_q(r));
            }
            let m = band_module(qp, &word, lambda, *power)?;
            finish_module(&cf, m, on_cover, module, out)?;
        }
        Command::Induce { file, rep, cover } => {
            let cf = CoverFunctors::new(&load_tri(file)?)?;
            let r = load_rep(&cf, rep, *cover)?;
            let img = if *cover { cf.to_base(&r)? } else { cf.to_cover(&r)? };
            out.both("target", if *cover { "base" } else { "cover" });
            out.rep("rep", &img);
        }
        Command::Decompose { file, rep, cover, seed } => {
            let cf = CoverFunctors::new(&load_tri(file)?)?;
            let r = load_rep(&cf, rep, *cover)?;
            let parts = decompose_seeded(&r, DEFAULT_DIMENSION_BOUND, seed.unwrap_or(DEFAULT_SEED))?;
            out.summands(&parts);
        }
        Command::Isiso { file, rep1, rep2, cover } => {
            let cf = CoverFunctors::new(&load_tri(file)?)?;
            let a = load_rep(&cf, rep1, *cover)?;
            let b = load_rep(&cf, rep2, *cover)?;
            out.both("isomorphic", is_isomorphic(&a, &b));
        }
        Command::Classify { file, strings, bands, max_len } => {
            let cov = Covering::new(&load_tri(file)?)?;
            if !strings && !bands {
                return Err(CliError::Parse("classify needs --strings or --bands".into()));
            }
            if *strings {
                let s = classify_strings(&cov, *max_len);
                out.both("strings.pairs", s.pairs.len());
                out.both("strings.involutions", s.involutions.len());
                out.both("strings.tagged", s.tagged.len());
                out.text(report_strings(&cov, &s).trim_end().to_string());
                for (i, (w, _)) in s.pairs.iter().enumerate() {
                    out.kv(&format!("strings.pair.{i}"), cov.base.show(w));
                }
                for (i, w) in s.involutions.iter().enumerate() {
                    out.kv(&format!("strings.involution.{i}"), cov.base.show(w));
                }
            }
            if *bands {
                let b = classify_bands(&cov, *max_len);
                out.both("bands.asymmetric", b.asymmetric.len());
                out.both("bands.symmetric", b.symmetric.len());
                out.both("bands.lifting", b.asymmetric.iter().chain(&b.symmetric).filter(|c| c.lifts).count());
                out.text(report_bands(&cov, &b).trim_end().to_string());
                for (i, c) in b.asymmetric.iter().enumerate() {
                    out.kv(&format!("bands.asymmetric.{i}"), format!("{} lifts={}", cov.base.show_cyclic(&c.word), c.lifts));
                }
                for (i, c) in b.symmetric.iter().enumerate() {
                    out.kv(&format!("bands.symmetric.{i}"), format!("{} lifts={}", cov.base.show_cyclic(&c.word), c.lifts));
                }
            }
        }
    }
    Ok(())
}

/// A word names arcs of the cover when some arc is not an arc of the base.
fn word_on_cover(cf: &CoverFunctors, word: &[String]) -> bool {
    let base = &cf.base_qp().quiver;
    let cover = &cf.cover_qp().quiver;
    word.iter().any(|v| !base.has_vertex(v)) && word.iter().all(|v| cover.has_vertex(v))
}

fn load_rep(cf: &CoverFunctors, path: &FsPath, cover: bool) -> Result<Representation, CliError> {
    let q = if cover { &cf.cover_qp().quiver } else { &cf.base_qp().quiver };
    Ok(parse_rep(&read(path)?, q)?)
}

fn finish_module(
    cf: &CoverFunctors,
    m: Representation,
    on_cover: bool,
    args: &ModuleArgs,
    out: &mut Out,
) -> Result<(), CliError> {
    out.both("quiver", if on_cover { "cover" } else { "base" });
    out.rep("module", &m);
    let last = if args.induce {
        let img = if on_cover { cf.to_base(&m)? } else { cf.to_cover(&m)? };
        out.text("induced:");
        out.rep("induced", &img);
        img
    } else {
        m
    };
    if args.decompose {
        let parts = decompose_seeded(&last, DEFAULT_DIMENSION_BOUND, args.seed.unwrap_or(DEFAULT_SEED))?;
        out.summands(&parts);
    }
    Ok(())
}

/// Dimension vector as `v:n` pairs, for reports and tests.
pub fn dims_string(r: &Representation) -> String {
    let m: BTreeMap<&String, &usize> = r.dims().iter().collect();
    m.iter().map(|(v, d)| format!("{v}:{d}")).collect::<Vec<_>>().join(",")
}
