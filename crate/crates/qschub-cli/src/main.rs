//! `qschub` — exact quantum Schubert calculus for adjoint and coadjoint
//! rational homogeneous spaces, on the command line.
//!
//! Every computation is exact (integer or rational arithmetic); all output
//! is deterministic, byte-identical across repeated runs with the same
//! flags. Exit codes:
//!
//! - `0` — success (verdicts like `NOT SEMISIMPLE` are successes);
//! - `2` — usage error: unknown verb, space, label, or an out-of-scope
//!   request;
//! - `3` — a claimed identity was falsified by exact computation (reserved
//!   so that automation can tell discoveries from crashes).

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num_traits::{One, Signed};
use qschub_core::curves;
use qschub_core::lie::{Root, RootSystem, Series, Weight, Word};
use qschub_core::localization;
use qschub_core::presentations::{
    presentation_for, trace_form_verdict, verify_presentation, QuotientAlgebra,
};
use qschub_core::qchev::{self, ClassVector, QMonomial};
use qschub_core::schubert::{allowed_flavors, Flavor, Space, SpaceId};
use qschub_core::Error;
use serde_json::{json, Value};

/// Exact quantum Schubert calculus on adjoint and coadjoint spaces.
#[derive(Parser)]
#[command(
    name = "qschub",
    version,
    about = "Exact quantum Schubert calculus for adjoint and coadjoint homogeneous spaces",
    long_about = "Exact quantum Schubert calculus for adjoint and coadjoint homogeneous \
spaces.\n\nSpaces are selected as TYPE/Pk (e.g. F4/P1, G2/P2, E6/P2, B3/P2). Class labels \
are root coefficient vectors \"[1,2,3,2,1,1]\", Weyl words \"s2 s4 s3\" (1-based), the \
names h / point / e, or a generator name from the ring catalog (s, t).\n\nAll arithmetic \
is exact and every computation is deterministic. The environment variable QSCHUB_THREADS \
caps parallelism; computations run on a single thread, so every positive cap is honored."
)]
struct Cli {
    /// Emit a stable JSON document instead of the human-readable output
    /// (field reference: docs/schema.json).
    #[arg(long, global = true)]
    json: bool,

    /// Fix the order of any sampled checks. Accepted for reproducibility
    /// scripting; nothing here samples, so the output never depends on it.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Print a root system: Cartan matrix, positive roots, highest roots.
    Roots {
        /// Series and rank, e.g. G2, B3, F4, E8.
        r#type: String,
    },
    /// List the Schubert classes of a space with degrees, words and labels.
    Classes {
        /// Space selector TYPE/Pk, e.g. F4/P1.
        space: String,
    },
    /// Quantum Bruhat graph on a degree window, as text or DOT.
    Hasse {
        space: String,
        /// Inclusive window "lo..hi" in the combined grading l(w) + d*c1.
        /// Negative bounds reach into the negative quantum powers.
        #[arg(long, value_name = "LO..HI", allow_hyphen_values = true)]
        window: String,
        /// Write the window as a DOT graph to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<String>,
    },
    /// Multiply a class by a power of the hyperplane class (quantum Chevalley).
    Chevalley {
        space: String,
        /// Class label (root vector, word, h, point, e, or generator name).
        #[arg(long, value_name = "LABEL")]
        class: String,
        /// Number of hyperplane factors to apply.
        #[arg(long, default_value_t = 1, value_name = "K")]
        power: u32,
    },
    /// Degree of a class, or of the product of two classes.
    #[command(group(ArgGroup::new("what").required(true).args(["class", "pair"])))]
    Degree {
        space: String,
        /// Class label whose degree is computed.
        #[arg(long, value_name = "LABEL")]
        class: Option<String>,
        /// Two class labels whose product degree is computed.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<String>>,
    },
    /// Print the catalog ring presentation of a space; --verify checks it.
    Presentation {
        space: String,
        /// Check graded dimensions against the Schubert basis and, for
        /// hyperplane-generated rings, the minimal polynomial.
        #[arg(long)]
        verify: bool,
    },
    /// Exact semisimplicity verdict of the quantum ring at a rational q.
    Semisimple {
        space: String,
        /// Rational value of the quantum parameter, e.g. 1 or -3/2.
        #[arg(long, value_name = "RATIONAL")]
        q: String,
    },
    /// Orthogonal root cascade and maximal quantum degree at a node.
    Dmax {
        /// Series and rank, e.g. G2, B3, F4, E8.
        r#type: String,
        /// 1-based marked node.
        #[arg(long, value_name = "K")]
        node: usize,
        /// Optional total-degree budget for the cascade.
        #[arg(long, value_name = "D")]
        budget: Option<i64>,
    },
    /// Enumerate T-invariant curve chains with prescribed component degrees.
    Chains {
        space: String,
        /// Comma-separated component degrees, e.g. 1,1 or 2.
        #[arg(long, value_name = "D1,D2,...")]
        degrees: String,
        /// Keep only chains ending at a distinguished point ("lowest").
        #[arg(long, value_name = "WHERE")]
        endpoint: Option<String>,
    },
    /// Degree-one Gromov-Witten invariant via the line-variety translation.
    Gw1 {
        space: String,
        /// First class (any label form).
        #[arg(long, value_name = "WORD")]
        u: String,
        /// Second class (any label form).
        #[arg(long, value_name = "WORD")]
        v: String,
        /// Third class; must be the point class.
        #[arg(long, value_name = "WORD")]
        w: String,
    },
    /// CSV census of the adjoint/coadjoint spaces of rank <= 8 with d_max.
    Census {
        /// Emit every row.
        #[arg(long)]
        all: bool,
    },
}

/// Print one line to stdout, exiting quietly when the read end of a pipe
/// has gone away (`qschub census --all | head` must not panic).
macro_rules! say {
    ($($t:tt)*) => { $crate::write_line(core::format_args!($($t)*)) };
}

fn write_line(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(args).and_then(|()| out.write_all(b"\n")).is_err() {
        std::process::exit(0);
    }
}

/// A failed run, split by exit code.
enum Failure {
    /// Exit 2: the request itself is malformed or out of scope.
    Usage(String),
    /// Exit 3: an identity the computation was asked to confirm is false.
    Falsified(String),
}

type CliResult<T> = Result<T, Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match &e {
            Error::CheckFailed(_) => Failure::Falsified(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = thread_cap().and_then(|_| dispatch(&cli));
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Falsified(m)) => {
            eprintln!("falsified: {m}");
            ExitCode::from(3)
        }
    }
}

/// Validate `QSCHUB_THREADS`. Every computation in this binary runs on the
/// calling thread, so any positive cap is honored as-is.
fn thread_cap() -> CliResult<usize> {
    match std::env::var("QSCHUB_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(usage(format!(
                "QSCHUB_THREADS must be a positive integer, got {s:?}"
            ))),
        },
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let json = cli.json;
    match &cli.verb {
        Verb::Roots { r#type } => cmd_roots(r#type, json),
        Verb::Classes { space } => cmd_classes(space, json),
        Verb::Hasse { space, window, dot } => cmd_hasse(space, window, dot.as_deref(), json),
        Verb::Chevalley { space, class, power } => cmd_chevalley(space, class, *power, json),
        Verb::Degree { space, class, pair } => {
            cmd_degree(space, class.as_deref(), pair.as_deref(), json)
        }
        Verb::Presentation { space, verify } => cmd_presentation(space, *verify, json),
        Verb::Semisimple { space, q } => cmd_semisimple(space, q, json),
        Verb::Dmax { r#type, node, budget } => cmd_dmax(r#type, *node, *budget, json),
        Verb::Chains { space, degrees, endpoint } => {
            cmd_chains(space, degrees, endpoint.as_deref(), json)
        }
        Verb::Gw1 { space, u, v, w } => cmd_gw1(space, u, v, w, json),
        Verb::Census { all } => cmd_census(*all, json),
    }
}

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

fn parse_series(s: &str) -> CliResult<(Series, usize)> {
    let t = s.trim();
    let mut chars = t.chars();
    let letter = chars
        .next()
        .ok_or_else(|| usage("empty type; expected e.g. G2, B3, F4, E8"))?;
    let series = match letter.to_ascii_uppercase() {
        'A' => Series::A,
        'B' => Series::B,
        'C' => Series::C,
        'D' => Series::D,
        'E' => Series::E,
        'F' => Series::F,
        'G' => Series::G,
        c => return Err(usage(format!("unknown series {c:?}; expected a letter A-G"))),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| usage(format!("cannot read a rank in {t:?}; expected e.g. G2, B3")))?;
    if !series.rank_ok(rank) {
        return Err(usage(format!("rank {rank} is not valid for series {series}")));
    }
    Ok((series, rank))
}

/// Resolve "TYPE/Pk" to a space, picking the most structured flavor the
/// node admits: adjoint, then coadjoint, then minuscule, cominuscule,
/// generic.
fn parse_space(name: &str) -> CliResult<Space> {
    let (ty, node_part) = name
        .trim()
        .split_once('/')
        .ok_or_else(|| usage(format!("space {name:?} must look like F4/P1")))?;
    let (series, rank) = parse_series(ty)?;
    let node_str = node_part
        .trim()
        .strip_prefix(['P', 'p'])
        .ok_or_else(|| usage(format!("space {name:?} must look like F4/P1")))?;
    let node: usize = node_str
        .parse()
        .map_err(|_| usage(format!("cannot read a node index in {name:?}")))?;
    let flavors = allowed_flavors(series, rank, node)?;
    let flavor = [
        Flavor::Adjoint,
        Flavor::Coadjoint,
        Flavor::Minuscule,
        Flavor::Cominuscule,
        Flavor::Other,
    ]
    .into_iter()
    .find(|f| flavors.contains(f))
    .expect("allowed_flavors is never empty");
    Ok(Space::new(SpaceId { series, rank, marked_node: node, flavor })?)
}

fn canonical_name(space: &Space) -> String {
    format!("{}{}/P{}", space.id.series, space.id.rank, space.id.marked_node)
}

/// A Weyl word in 1-based letters: "s2 s4 s3", "s2s4s3", or "2 4 3".
fn parse_word_1based(s: &str, rank: usize) -> CliResult<Word> {
    let mut out = Word::new();
    let cleaned = s.replace(',', " ");
    for tok in cleaned.split_whitespace() {
        for piece in tok.split(['s', 'S']) {
            if piece.is_empty() {
                continue;
            }
            let k: usize = piece.parse().map_err(|_| {
                usage(format!("cannot read {piece:?} as a 1-based simple-root index"))
            })?;
            if k == 0 || k > rank {
                return Err(usage(format!("simple-root index {k} outside 1..={rank}")));
            }
            out.push(k - 1);
        }
    }
    Ok(out)
}

/// Resolve a class label: "[1,2,3,2,1,1]" (root vector), "s2 s4 s3" or
/// "2 4 3" (1-based word), "e"/"id"/"1", "h", "point"/"pt", or a generator
/// name from the catalog presentation of the space.
fn parse_class(space: &Space, s: &str) -> CliResult<usize> {
    let t = s.trim();
    if t.is_empty() {
        return Err(usage("empty class label"));
    }
    if t.starts_with('[') {
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        let mut root: Root = Vec::new();
        for piece in inner.split(',') {
            root.push(piece.trim().parse::<i64>().map_err(|_| {
                usage(format!("cannot read {piece:?} as a root coefficient"))
            })?);
        }
        if root.len() != space.id.rank {
            return Err(usage(format!(
                "root label {t} has {} coefficients; rank is {}",
                root.len(),
                space.id.rank
            )));
        }
        return Ok(space.class_by_label(&root)?);
    }
    match t {
        "e" | "id" | "1" => return Ok(space.class_by_word(&[])?),
        "h" => return Ok(qchev::hyperplane_class(space)?),
        "point" | "pt" => return Ok(qchev::point_class(space)?),
        _ => {}
    }
    if t.chars().any(|c| c.is_ascii_digit()) {
        let word = parse_word_1based(t, space.id.rank)?;
        return Ok(space.class_by_word(&word)?);
    }
    let name = canonical_name(space);
    match presentation_for(&name) {
        Ok(pres) => match pres.generators.get(t) {
            Some(word) => Ok(space.class_by_word(word)?),
            None => Err(usage(format!(
                "unknown class label {t:?} for {name}; try a word (\"s2 s4\"), a root \
                 vector (\"[1,2,...]\"), h, point, e, or a catalog generator name"
            ))),
        },
        Err(_) => Err(usage(format!(
            "unknown class label {t:?} and no catalog presentation for {name}; try a \
             word (\"s2 s4\"), a root vector (\"[1,2,...]\"), h, point, or e"
        ))),
    }
}

fn parse_window(s: &str) -> CliResult<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("window {s:?} must look like 0..5")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| usage(format!("cannot read window bound {lo:?}")))?;
    let hi: i64 = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| usage(format!("cannot read window bound {hi:?}")))?;
    Ok((lo, hi))
}

fn parse_rat(s: &str) -> CliResult<qschub_core::arith::Rat> {
    s.trim()
        .parse()
        .map_err(|_| usage(format!("cannot read {s:?} as a rational number (e.g. 1, -3/2)")))
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

fn word_str(w: &[usize]) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    }
}

fn word_1based(w: &[usize]) -> Vec<usize> {
    w.iter().map(|&i| i + 1).collect()
}

fn root_str(r: &Root) -> String {
    format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn weight_str(w: &Weight) -> String {
    root_str(w)
}

/// Preferred display of a class: root label for (co)adjoint spaces, reduced
/// word otherwise.
fn sigma_str(space: &Space, k: usize) -> String {
    match &space.classes[k].label {
        Some(l) => format!("sigma{}", root_str(l)),
        None => format!("sigma({})", word_str(&space.classes[k].word)),
    }
}

fn class_json(space: &Space, k: usize) -> Value {
    let cls = &space.classes[k];
    match &cls.label {
        Some(l) => json!({ "root": l, "word": word_1based(&cls.word), "degree": cls.length }),
        None => json!({ "word": word_1based(&cls.word), "degree": cls.length }),
    }
}

/// One quantum monomial, e.g. "q^2*sigma[1,2]".
fn qmonomial_str(space: &Space, m: &QMonomial) -> String {
    let mut parts = Vec::new();
    if m.d == 1 {
        parts.push("q".to_string());
    } else if m.d != 0 {
        parts.push(format!("q^{}", m.d));
    }
    parts.push(sigma_str(space, m.class));
    parts.join("*")
}

/// Sign-aware rendering of a class vector over the quantum monomials.
fn vector_str(space: &Space, v: &ClassVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (m, c) in v.iter_terms() {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts = Vec::new();
        if !mag.is_one() {
            parts.push(mag.to_string());
        }
        if m.d == 1 {
            parts.push("q".to_string());
        } else if m.d != 0 {
            parts.push(format!("q^{}", m.d));
        }
        parts.push(sigma_str(space, m.class));
        out.push_str(&parts.join("*"));
    }
    out
}

fn vector_json(space: &Space, v: &ClassVector) -> Value {
    let terms: Vec<Value> = v
        .iter_terms()
        .map(|(m, c)| {
            let cls = &space.classes[m.class];
            match &cls.label {
                Some(l) => json!({
                    "root": l,
                    "word": word_1based(&cls.word),
                    "q": m.d,
                    "coeff": c.to_string(),
                }),
                None => json!({
                    "word": word_1based(&cls.word),
                    "q": m.d,
                    "coeff": c.to_string(),
                }),
            }
        })
        .collect();
    json!({ "terms": terms })
}

/// Quantum-parameter degrees at the marked nodes for spaces with several
/// marked nodes (the bigraded series-A adjoint model):
/// `<sum of positive roots outside the Levi, alpha_i^vee>`.
fn marked_c1(space: &Space) -> Vec<i64> {
    let rs = &space.system;
    let mut total = vec![0i64; rs.rank];
    for beta in &rs.positive_roots {
        if space.marked.iter().any(|&i| beta[i] != 0) {
            for j in 0..rs.rank {
                total[j] += beta[j];
            }
        }
    }
    let wt = rs.root_to_weight(&total);
    space
        .marked
        .iter()
        .map(|&i| {
            let mut alpha = vec![0i64; rs.rank];
            alpha[i] = 1;
            rs.pair(&wt, &alpha)
        })
        .collect()
}

fn c1_human(space: &Space) -> String {
    match space.c1 {
        Some(v) => v.to_string(),
        None => {
            let pair = marked_c1(space);
            format!(
                "({})",
                pair.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            )
        }
    }
}

fn c1_json(space: &Space) -> Value {
    match space.c1 {
        Some(v) => json!(v),
        None => json!(marked_c1(space)),
    }
}

fn emit(doc: &Value) {
    say!("{doc}");
}

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

fn cmd_roots(ty: &str, json: bool) -> CliResult<()> {
    let (series, rank) = parse_series(ty)?;
    let rs = RootSystem::new(series, rank)?;
    if json {
        emit(&json!({
            "verb": "roots",
            "type": format!("{series}{rank}"),
            "rank": rank,
            "cartan": rs.cartan,
            "positive_roots": rs.positive_roots,
            "highest_root": rs.highest_root,
            "highest_short_root": rs.highest_short_root,
        }));
        return Ok(());
    }
    say!("root system {series}{rank} (rank {rank})");
    say!("cartan matrix:");
    for row in &rs.cartan {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
        say!("  [{}]", cells.join(" "));
    }
    say!("positive roots ({}):", rs.positive_roots.len());
    for (i, r) in rs.positive_roots.iter().enumerate() {
        let height: i64 = r.iter().sum();
        say!("  {:>3}: {}  height {}", i + 1, root_str(r), height);
    }
    say!("highest root:       {}", root_str(&rs.highest_root));
    say!("highest short root: {}", root_str(&rs.highest_short_root));
    Ok(())
}

fn cmd_classes(space_name: &str, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    if json {
        let classes: Vec<Value> = (0..space.num_classes()).map(|k| class_json(&space, k)).collect();
        emit(&json!({
            "verb": "classes",
            "space": canonical_name(&space),
            "flavor": space.id.flavor.to_string(),
            "dim": space.dim,
            "c1": c1_json(&space),
            "classes": classes,
        }));
        return Ok(());
    }
    say!(
        "space {}: dim {}, c1 {}, {} classes",
        space.id,
        space.dim,
        c1_human(&space),
        space.num_classes()
    );
    for cls in &space.classes {
        let label = match &cls.label {
            Some(l) => root_str(l),
            None => "-".to_string(),
        };
        say!("  deg {:>2}  {:<24}  {}", cls.length, word_str(&cls.word), label);
    }
    Ok(())
}

fn cmd_hasse(space_name: &str, window: &str, dot: Option<&str>, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let (lo, hi) = parse_window(window)?;
    let hd = qchev::hasse_diagram(&space, lo, hi)?;
    if let Some(file) = dot {
        let src = qchev::hasse_dot(&space, &hd);
        std::fs::write(file, src).map_err(|e| usage(format!("cannot write {file}: {e}")))?;
        if json {
            emit(&json!({
                "verb": "hasse",
                "space": canonical_name(&space),
                "window": [lo, hi],
                "nodes": hd.nodes.len(),
                "edges": hd.edges.len(),
                "dot_file": file,
            }));
        } else {
            say!(
                "wrote {} nodes, {} edges to {file}",
                hd.nodes.len(),
                hd.edges.len()
            );
        }
        return Ok(());
    }
    if json {
        let nodes: Vec<Value> = hd
            .nodes
            .iter()
            .zip(&hd.lengths)
            .map(|(m, len)| {
                let mut obj = class_json(&space, m.class);
                let map = obj.as_object_mut().expect("class_json emits an object");
                map.insert("q".to_string(), json!(m.d));
                map.insert("grading".to_string(), json!(len));
                obj
            })
            .collect();
        let edges: Vec<Value> = hd.edges.iter().map(|(a, b, c)| json!([a, b, c])).collect();
        emit(&json!({
            "verb": "hasse",
            "space": canonical_name(&space),
            "window": [lo, hi],
            "nodes": nodes,
            "edges": edges,
        }));
        return Ok(());
    }
    say!(
        "quantum Bruhat window {lo}..{hi} on {}: {} nodes, {} edges",
        space.id,
        hd.nodes.len(),
        hd.edges.len()
    );
    for (i, (m, len)) in hd.nodes.iter().zip(&hd.lengths).enumerate() {
        say!("  {:>3}  grading {:>3}  {}", i, len, qmonomial_str(&space, m));
    }
    say!("edges (from -> to, Chevalley coefficient):");
    for (a, b, c) in &hd.edges {
        say!("  {a} -> {b}  ({c})");
    }
    Ok(())
}

fn cmd_chevalley(space_name: &str, class: &str, power: u32, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let k = parse_class(&space, class)?;
    let mut v = ClassVector::basis(QMonomial::new(k, 0));
    for _ in 0..power {
        v = qchev::quantum_chevalley(&space, &v)?;
    }
    if json {
        emit(&json!({
            "verb": "chevalley",
            "space": canonical_name(&space),
            "class": class_json(&space, k),
            "power": power,
            "result": vector_json(&space, &v),
        }));
        return Ok(());
    }
    say!("h^{power} * {} = {}", sigma_str(&space, k), vector_str(&space, &v));
    Ok(())
}

fn cmd_degree(
    space_name: &str,
    class: Option<&str>,
    pair: Option<&[String]>,
    json: bool,
) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let value = match (class, pair) {
        (Some(c), None) => qchev::class_degree(&space, parse_class(&space, c)?)?,
        (None, Some(p)) => {
            let u = parse_class(&space, &p[0])?;
            let v = parse_class(&space, &p[1])?;
            qchev::product_degree(&space, u, v)?
        }
        _ => unreachable!("clap enforces exactly one of --class/--pair"),
    };
    if json {
        emit(&json!({
            "verb": "degree",
            "space": canonical_name(&space),
            "degree": value.to_string(),
        }));
        return Ok(());
    }
    say!("{value}");
    Ok(())
}

fn cmd_presentation(space_name: &str, verify: bool, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let name = canonical_name(&space);
    let pres = presentation_for(&name)?;
    let var_refs = pres.var_refs();
    let rendered: Vec<String> = pres.relations.iter().map(|r| r.render(&var_refs)).collect();
    let report = if verify { Some(verify_presentation(&pres)?) } else { None };
    if json {
        let variables: Vec<Value> = pres
            .var_names
            .iter()
            .zip(&pres.weights)
            .map(|(n, w)| json!({ "name": n, "weight": w }))
            .collect();
        let generators: Value = pres
            .generators
            .iter()
            .map(|(n, w)| (n.clone(), json!(word_1based(w))))
            .collect::<serde_json::Map<_, _>>()
            .into();
        let verify_json = match &report {
            Some(r) => json!({
                "pass": true,
                "window": r.window,
                "rank": r.rank,
                "min_poly_matches": r.min_poly_matches,
            }),
            None => Value::Null,
        };
        emit(&json!({
            "verb": "presentation",
            "space": name,
            "variables": variables,
            "num_q": pres.num_q,
            "relations": rendered,
            "generators": generators,
            "verify": verify_json,
        }));
        return Ok(());
    }
    let vars: Vec<String> = pres
        .var_names
        .iter()
        .zip(&pres.weights)
        .map(|(n, w)| format!("{n} (weight {w})"))
        .collect();
    say!("presentation {name}: variables {}", vars.join(", "));
    for (rel, deg) in rendered.iter().zip(pres.relation_degrees()?) {
        say!("  relation (degree {deg}): {rel} = 0");
    }
    for (gname, word) in &pres.generators {
        say!("  generator {gname} = {}", word_str(word));
    }
    if let Some(r) = &report {
        say!(
            "verify: PASS — graded dimensions match the Schubert basis through degree {}, \
             module rank {}",
            r.window, r.rank
        );
        if r.min_poly_matches == Some(true) {
            say!(
                "verify: the defining relation equals the minimal polynomial of the \
                 hyperplane operator"
            );
        }
    }
    Ok(())
}

fn cmd_semisimple(space_name: &str, q: &str, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let name = canonical_name(&space);
    let pres = presentation_for(&name)?;
    let qv = parse_rat(q)?;
    let mut alg = QuotientAlgebra::new(pres)?;
    let report = trace_form_verdict(&mut alg, &[qv])?;
    if json {
        emit(&json!({
            "verb": "semisimple",
            "space": name,
            "q": q.trim(),
            "semisimple": report.semisimple,
            "rank": report.rank,
            "gram_det": report.gram_det.to_string(),
        }));
        return Ok(());
    }
    let verdict = if report.semisimple { "SEMISIMPLE" } else { "NOT SEMISIMPLE" };
    let shape = if report.semisimple { "nonsingular" } else { "singular" };
    say!(
        "{name} at q = {}: {verdict} ({shape} trace form on the rank-{} fiber)",
        q.trim(),
        report.rank
    );
    Ok(())
}

fn cmd_dmax(ty: &str, node: usize, budget: Option<i64>, json: bool) -> CliResult<()> {
    let (series, rank) = parse_series(ty)?;
    let rs = RootSystem::new(series, rank)?;
    let c = curves::cascade(&rs, node, budget)?;
    if json {
        let steps: Vec<Value> = c
            .steps
            .iter()
            .map(|(r, d)| json!({ "root": r, "degree": d }))
            .collect();
        emit(&json!({
            "verb": "dmax",
            "type": format!("{series}{rank}"),
            "node": node,
            "budget": budget,
            "steps": steps,
            "word": word_1based(&c.word(&rs)),
            "dmax": c.total_degree(),
        }));
        return Ok(());
    }
    let scope = match budget {
        Some(b) => format!(" (budget {b})"),
        None => String::new(),
    };
    say!("cascade for {series}{rank} node {node}{scope}:");
    for (i, (root, d)) in c.steps.iter().enumerate() {
        say!("  step {}: theta = {}, degree {}", i + 1, root_str(root), d);
    }
    say!("word: {}", word_str(&c.word(&rs)));
    say!("d_max = {}", c.total_degree());
    Ok(())
}

fn cmd_chains(
    space_name: &str,
    degrees: &str,
    endpoint: Option<&str>,
    json: bool,
) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let mut degs: Vec<i64> = Vec::new();
    for piece in degrees.split(',') {
        let d: i64 = piece
            .trim()
            .parse()
            .map_err(|_| usage(format!("cannot read component degree {piece:?}")))?;
        if d < 1 {
            return Err(usage(format!("component degrees must be >= 1, got {d}")));
        }
        degs.push(d);
    }
    if degs.is_empty() {
        return Err(usage("at least one component degree is required"));
    }
    let chains = match endpoint {
        None => curves::enumerate_all_chains(&space, &degs),
        Some("lowest") => {
            let lowest = space.system.apply_wt(&space.w0, &space.varpi);
            curves::enumerate_chains(&space, &degs, &lowest)
        }
        Some(other) => {
            return Err(usage(format!(
                "--endpoint only accepts \"lowest\", got {other:?}"
            )))
        }
    };
    if json {
        let rows: Vec<Value> = chains
            .iter()
            .map(|ch| {
                json!({
                    "roots": ch.roots,
                    "degrees": ch.degrees,
                    "endpoint": ch.endpoint(&space.system, &space.varpi),
                })
            })
            .collect();
        emit(&json!({
            "verb": "chains",
            "space": canonical_name(&space),
            "degrees": degs,
            "endpoint_filter": endpoint,
            "chains": rows,
        }));
        return Ok(());
    }
    let ending = match endpoint {
        Some(e) => format!(", endpoint {e}"),
        None => String::new(),
    };
    say!(
        "chains with component degrees {:?} on {}{}:",
        degs, space.id, ending
    );
    for (i, ch) in chains.iter().enumerate() {
        let comps: Vec<String> = ch
            .roots
            .iter()
            .zip(&ch.degrees)
            .map(|(r, d)| format!("{} (deg {d})", root_str(r)))
            .collect();
        say!(
            "  {:>3}: {}  -> endpoint {}",
            i + 1,
            comps.join(" -> "),
            weight_str(&ch.endpoint(&space.system, &space.varpi))
        );
    }
    say!("total: {} chain(s)", chains.len());
    Ok(())
}

fn cmd_gw1(space_name: &str, u: &str, v: &str, w: &str, json: bool) -> CliResult<()> {
    let space = parse_space(space_name)?;
    let cu = parse_class(&space, u)?;
    let cv = parse_class(&space, v)?;
    let cw = parse_class(&space, w)?;
    let value = localization::gw_degree_one(&space, cu, cv, cw)?;
    if json {
        emit(&json!({
            "verb": "gw1",
            "space": canonical_name(&space),
            "u": class_json(&space, cu),
            "v": class_json(&space, cv),
            "w": class_json(&space, cw),
            "invariant": value.to_string(),
        }));
        return Ok(());
    }
    say!("{value}");
    Ok(())
}

fn cmd_census(all: bool, json: bool) -> CliResult<()> {
    if !all {
        return Err(usage("census requires --all"));
    }
    struct Row {
        space: String,
        flavor: Flavor,
        varpi: String,
        dim: usize,
        c1: Value,
        c1_text: String,
        classes: usize,
        dmax: i64,
    }
    let mut rows: Vec<Row> = Vec::new();
    let mut push = |space: Space| -> CliResult<()> {
        let varpi_label: Vec<String> = space
            .varpi
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    format!("w{}", i + 1)
                } else {
                    format!("{c}w{}", i + 1)
                }
            })
            .collect();
        let dmax = curves::space_cascade(&space, None)?.total_degree();
        let c1_text = match space.c1 {
            Some(v) => v.to_string(),
            None => marked_c1(&space)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";"),
        };
        rows.push(Row {
            space: canonical_name(&space),
            flavor: space.id.flavor,
            varpi: varpi_label.join("+"),
            dim: space.dim,
            c1: c1_json(&space),
            c1_text,
            classes: space.num_classes(),
            dmax,
        });
        Ok(())
    };
    // D3 coincides with A3 (its adjoint weight spans two nodes), so the
    // D column starts at rank 4, as in the invariants table.
    let ranks = |series: Series| -> Vec<usize> {
        match series {
            Series::A => (2..=8).collect(),
            Series::B | Series::C => (2..=8).collect(),
            Series::D => (4..=8).collect(),
            Series::E => (6..=8).collect(),
            Series::F => vec![4],
            Series::G => vec![2],
        }
    };
    for series in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G] {
        for rank in ranks(series) {
            let adjoint = Space::adjoint(series, rank)?;
            let distinct =
                adjoint.system.highest_root != adjoint.system.highest_short_root;
            push(adjoint)?;
            if distinct {
                push(Space::coadjoint(series, rank)?)?;
            }
        }
    }
    if json {
        let out: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "space": r.space,
                    "flavor": r.flavor.to_string(),
                    "varpi": r.varpi,
                    "dim": r.dim,
                    "c1": r.c1,
                    "classes": r.classes,
                    "dmax": r.dmax,
                })
            })
            .collect();
        emit(&json!({ "verb": "census", "rows": out }));
        return Ok(());
    }
    say!("space,flavor,varpi,dim,c1,classes,dmax");
    for r in &rows {
        say!(
            "{},{},{},{},{},{},{}",
            r.space, r.flavor, r.varpi, r.dim, r.c1_text, r.classes, r.dmax
        );
    }
    Ok(())
}
