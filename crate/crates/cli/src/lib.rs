//! The `kd3` command line.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use kd3_core::format::matrix::{parse_matrix, serialize_matrix};
use kd3_core::format::presentation::{parse_presentation, serialize_presentation};
use kd3_core::format::script::parse_script;
use kd3_core::format::{
    parse_kd3, serialize_kd3, serialize_kirby_document, Document, KirbyDocument, ParseError,
    ParseErrorKind,
};
use kd3_core::groups::{
    abelianization, count_homs, pi1_of_boundary, pi1_of_x, tietze_simplify, TargetGroup,
};
use kd3_core::invariants::{
    boundary_homology, check_basis_integral, check_basis_mod2, component_order, hypothesis_report,
    linking_matrix, meridian_pairing_check,
};
use kd3_core::moves::{apply_move, run_script, MoveKind, MoveRequest};
use kd3_core::surface::{exterior_kirby, resolve, surface_euler, three_handle_count, Which};
use kd3_core::unlink::BandedUnlink;
use kd3_core::{Id, KirbyDiagram, Sign};

const TIETZE_BUDGET: usize = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "kd3",
    version,
    about = "Extended Kirby diagrams: moves and invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a KD3 document.
    Validate { file: PathBuf },
    /// Handle counts, linking matrix, boundary homology, π₁(X) and hypotheses.
    Invariants { file: PathBuf },
    /// Apply one move.
    Move {
        file: PathBuf,
        kind: MoveKind,
        actor: Id,
        /// Target handle; omit or pass `-` for moves without one.
        target: Option<String>,
        #[arg(long, default_value = "+1", allow_negative_numbers = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a move script.
    Script {
        file: PathBuf,
        script: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kirby diagram of the exterior of a banded unlink.
    Exterior {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Basis and pairing checks on a matrix file.
    CheckBasis(CheckBasis),
    /// Count homomorphisms of a presentation into a small finite group.
    Homs {
        file: PathBuf,
        #[arg(long, default_value = "s3")]
        target: TargetGroup,
    },
    /// Full report: document, invariants and, given a planar diagram, the
    /// boundary group certificate.
    Report { file: PathBuf },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["mod2", "integral", "pairing"])))]
struct CheckBasis {
    file: PathBuf,
    /// Rows are classes mod 2; they must form a basis of GF(2)^n.
    #[arg(long)]
    mod2: bool,
    /// Rows are integral classes; they must form a basis of Z^n.
    #[arg(long)]
    integral: bool,
    /// The matrix is a meridian pairing; it must be the identity.
    #[arg(long)]
    pairing: bool,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+1" | "1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, found `{s}`")),
    }
}

/// Output streams and presentation settings for one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub color: bool,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

/// Runs the command line and returns the exit code: 0 on success, 1 on a
/// domain failure, 2 on a usage error.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let stream: &mut dyn Write = if e.use_stderr() { io.err } else { io.out };
            let _ = stream.write_all(text.as_bytes());
            return code;
        }
    };
    let color = io.color;
    let result = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Invariants { file } => invariants(&file, color),
        Command::Move {
            file,
            kind,
            actor,
            target,
            sign,
            output,
        } => one_move(&file, kind, actor, target, sign, output.as_deref(), color),
        Command::Script {
            file,
            script,
            output,
        } => run_moves(&file, &script, output.as_deref(), color),
        Command::Exterior { file, output } => exterior(&file, output.as_deref(), color),
        Command::CheckBasis(c) => check_basis(&c),
        Command::Homs { file, target } => homs(&file, &target),
        Command::Report { file } => report(&file, color),
    };
    match result {
        Ok((text, ok)) => {
            let _ = io.out.write_all(text.as_bytes());
            i32::from(!ok)
        }
        Err(Failure(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            1
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> Failure {
    match &e.kind {
        ParseErrorKind::Invalid(diags) => {
            let lines: Vec<String> = diags
                .iter()
                .map(|d| format!("{}: {d}", path.display()))
                .collect();
            Failure(format!(
                "{}: invalid diagram\n{}",
                path.display(),
                lines.join("\n")
            ))
        }
        _ => Failure(format!("{}:{e}", path.display())),
    }
}

fn load(path: &Path) -> Result<Document, Failure> {
    parse_kd3(&read(path)?).map_err(|e| located(path, e))
}

fn load_kirby(path: &Path) -> Result<KirbyDocument, Failure> {
    match load(path)? {
        Document::Kirby(k) => Ok(k),
        Document::Unlink(_) => Err(Failure(format!(
            "{}: expected a Kirby diagram, found a banded unlink (see `kd3 exterior`)",
            path.display()
        ))),
    }
}

fn load_unlink(path: &Path) -> Result<BandedUnlink, Failure> {
    match load(path)? {
        Document::Unlink(u) => Ok(u),
        Document::Kirby(_) => Err(Failure(format!(
            "{}: expected a banded unlink",
            path.display()
        ))),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn heading(out: &mut String, title: &str, color: bool) {
    if color {
        let _ = writeln!(out, "\x1b[1m== {title} ==\x1b[0m");
    } else {
        let _ = writeln!(out, "== {title} ==");
    }
}

fn fenced(out: &mut String, lang: &str, body: &str) {
    let _ = writeln!(out, "```{lang}");
    out.push_str(body);
    if !body.ends_with('\n') {
        out.push('\n');
    }
    out.push_str("```\n");
}

fn validate(path: &Path) -> Outcome {
    let doc = load(path)?;
    let text = match doc {
        Document::Kirby(k) => format!(
            "valid Kirby diagram, handle counts {}\n",
            k.diagram.counts()
        ),
        Document::Unlink(u) => format!(
            "valid banded unlink, {} components, {} bands\n",
            u.components.len(),
            u.bands.len()
        ),
    };
    Ok((text, true))
}

fn invariant_text(d: &KirbyDiagram, color: bool) -> String {
    let mut out = String::new();
    heading(&mut out, "invariants", color);
    let _ = writeln!(out, "handle counts: {}", d.counts());
    let _ = writeln!(out, "euler characteristic: {}", d.euler_characteristic());
    let order: Vec<String> = component_order(d).iter().map(Id::to_string).collect();
    let _ = writeln!(out, "linking matrix ({}):", order.join(" "));
    fenced(&mut out, "matrix", &serialize_matrix(&linking_matrix(d)));
    let h = boundary_homology(d);
    let divisors: Vec<String> = h.smith.divisors.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(
        out,
        "smith normal form: [{}], rank {}",
        divisors.join(", "),
        h.rank()
    );
    let _ = writeln!(out, "H1 of boundary: {}", h.h1);
    let _ = writeln!(out, "H2 free rank: {}", h.h2_free_rank);
    let pi = pi1_of_x(d);
    let _ = writeln!(out, "pi1(X) on the dotted meridians:");
    fenced(
        &mut out,
        "presentation",
        &serialize_presentation(&pi.presentation),
    );
    for w in &pi.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    heading(&mut out, "hypotheses", color);
    let _ = writeln!(out, "{}", hypothesis_report(d));
    out
}

fn invariants(path: &Path, color: bool) -> Outcome {
    let doc = load_kirby(path)?;
    Ok((invariant_text(&doc.diagram, color), true))
}

fn resolve_target(kind: MoveKind, target: Option<String>) -> Result<Option<Id>, Failure> {
    match target.as_deref() {
        None | Some("-") if !kind.needs_target() => Ok(None),
        None | Some("-") => Err(Failure(format!("{} needs a target", kind.name()))),
        Some(t) => Ok(Some(Id::new(t)?)),
    }
}

fn one_move(
    path: &Path,
    kind: MoveKind,
    actor: Id,
    target: Option<String>,
    sign: Sign,
    output: Option<&Path>,
    color: bool,
) -> Outcome {
    let doc = load_kirby(path)?;
    let target = resolve_target(kind, target)?;
    let request = MoveRequest::new(kind, actor, target, sign);
    let (d, report) = apply_move(&doc.diagram, &request)?;
    let mut out = String::new();
    heading(&mut out, "move", color);
    out.push_str(&report.to_string());
    let text = serialize_kd3(&d);
    fenced(&mut out, "kd3", &text);
    write_output(output, &text)?;
    Ok((out, true))
}

fn run_moves(path: &Path, script_path: &Path, output: Option<&Path>, color: bool) -> Outcome {
    let doc = load_kirby(path)?;
    let moves = parse_script(&read(script_path)?).map_err(|e| located(script_path, e))?;
    let (d, reports) = run_script(&doc.diagram, &moves)?;
    let mut out = String::new();
    heading(&mut out, "transcript", color);
    for r in &reports {
        out.push_str(&r.to_string());
    }
    let ok = reports.iter().all(|r| r.applied);
    let _ = writeln!(
        out,
        "applied {} of {} moves",
        reports.iter().filter(|r| r.applied).count(),
        moves.len()
    );
    let text = serialize_kd3(&d);
    fenced(&mut out, "kd3", &text);
    write_output(output, &text)?;
    Ok((out, ok))
}

fn exterior_text(b: &BandedUnlink, color: bool) -> Result<(String, String), Failure> {
    let d = exterior_kirby(b)?;
    let mut out = String::new();
    heading(&mut out, "banded unlink", color);
    let _ = writeln!(out, "|L-|: {}", resolve(b, Which::LMinus)?.components);
    let _ = writeln!(out, "|L+|: {}", resolve(b, Which::LPlus)?.components);
    let _ = writeln!(out, "bands |M|: {}", b.bands.len());
    let _ = writeln!(out, "chi(F): {}", surface_euler(b)?);
    let _ = writeln!(out, "3-handles: {}", three_handle_count(b)?);
    heading(&mut out, "exterior", color);
    let _ = writeln!(out, "handle counts: {}", d.counts());
    let _ = writeln!(out, "chi(exterior): {}", d.euler_characteristic());
    if !d.three_handles.is_empty() {
        let _ = writeln!(
            out,
            "note: 3-handle data is zero-initialized; fill it in before checking bases"
        );
    }
    let text = serialize_kd3(&d);
    fenced(&mut out, "kd3", &text);
    Ok((out, text))
}

fn exterior(path: &Path, output: Option<&Path>, color: bool) -> Outcome {
    let b = load_unlink(path)?;
    let (out, text) = exterior_text(&b, color)?;
    write_output(output, &text)?;
    Ok((out, true))
}

fn check_basis(c: &CheckBasis) -> Outcome {
    let m = parse_matrix(&read(&c.file)?).map_err(|e| located(&c.file, e))?;
    let verdict = if c.pairing {
        meridian_pairing_check(&m)?
    } else {
        let mut rows = Vec::with_capacity(m.rows());
        for row in m.to_rows() {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                r.push(
                    i64::try_from(&x)
                        .map_err(|_| Failure(format!("entry {x} does not fit in 64 bits")))?,
                );
            }
            rows.push(r);
        }
        if c.mod2 {
            let bits: Vec<Vec<bool>> = rows
                .iter()
                .map(|r| r.iter().map(|x| x.rem_euclid(2) == 1).collect())
                .collect();
            check_basis_mod2(&bits)?
        } else {
            check_basis_integral(&rows)?
        }
    };
    Ok((format!("{verdict}\n"), true))
}

fn homs(path: &Path, target: &TargetGroup) -> Outcome {
    let p = parse_presentation(&read(path)?).map_err(|e| located(path, e))?;
    let count = match count_homs(&p, target) {
        Ok(n) => n,
        Err(_) => count_homs(&tietze_simplify(&p, TIETZE_BUDGET), target)?,
    };
    Ok((format!("{count}\n"), true))
}

fn report(path: &Path, color: bool) -> Outcome {
    let mut out = String::new();
    match load(path)? {
        Document::Unlink(b) => {
            let (text, _) = exterior_text(&b, color)?;
            out.push_str(&text);
        }
        Document::Kirby(doc) => {
            heading(&mut out, "document", color);
            fenced(&mut out, "kd3", &serialize_kirby_document(&doc));
            out.push_str(&invariant_text(&doc.diagram, color));
            if let Some(pd) = &doc.surgery_pd {
                heading(&mut out, "boundary group", color);
                let p = tietze_simplify(&pi1_of_boundary(pd)?, TIETZE_BUDGET);
                fenced(&mut out, "presentation", &serialize_presentation(&p));
                let ab = abelianization(&p);
                let _ = writeln!(out, "abelianization: {ab}");
                let s3 = TargetGroup::Symmetric(3);
                match count_homs(&p, &s3) {
                    Ok(n) => {
                        let _ = writeln!(out, "homs into s3: {n}");
                        if ab.torsion.is_empty() {
                            let free = 6u64.checked_pow(ab.free_rank as u32);
                            let verdict = if free == Some(n) {
                                "consistent with"
                            } else {
                                "not"
                            };
                            let _ = writeln!(
                                out,
                                "free of rank {} would give {}: {verdict} free",
                                ab.free_rank,
                                free.map_or("overflow".to_string(), |f| f.to_string())
                            );
                        }
                    }
                    Err(e) => {
                        let _ = writeln!(out, "homs into s3: {e}");
                    }
                }
            }
        }
    }
    Ok((out, true))
}
