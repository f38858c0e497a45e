use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tauex::catalog::Catalog;
use tauex::ids::StrObject;
use tauex::quiver::{AlgebraDescription, BoundQuiverAlgebra};
use tauex::seq::{format_sequence, parse_sequence, Op, SeqEngine, Step, TauES};
use tauex::tilt::{Engine, Wide};
use tauex::verify::{Suite, Verifier};
use tauex::Error;

#[derive(Parser)]
#[command(name = "tauex", version, about = "Exact τ-tilting computations for bound quiver algebras")]
struct Cli {
    /// Per-vertex dimension cap for the enumeration, e.g. `4,4,4`.
    #[arg(long, global = true, value_delimiter = ',')]
    dim_bound: Option<Vec<usize>>,
    /// Worker threads for the parallel parts.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Algebra summary and the list of indecomposables.
    Inspect { file: PathBuf },
    /// τ-exceptional sequences.
    Tes {
        file: PathBuf,
        #[command(subcommand)]
        action: TesAction,
    },
    /// Run the property suites.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Args)]
struct JFilter {
    /// Restrict to sequences with J equal to J(T), T given as comma-separated objects like `S1,P2[1]`.
    #[arg(long)]
    j: Option<String>,
}

#[derive(Subcommand)]
enum TesAction {
    /// List complete sequences, or those with a given J.
    Enumerate {
        #[command(flatten)]
        filter: JFilter,
    },
    /// Apply one mutation step.
    Mutate {
        #[arg(long)]
        op: Op,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        seq: String,
    },
    /// A mutation word from one sequence to another, checked by applying it.
    Path {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The mutation graph.
    Graph {
        #[command(flatten)]
        filter: JFilter,
        #[arg(long)]
        dot: bool,
    },
}

enum Failure {
    Input(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Session {
    algebra: Arc<BoundQuiverAlgebra>,
    catalog: Arc<Catalog>,
    json: bool,
}

fn read_description(path: &Path) -> tauex::Result<AlgebraDescription> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let with_path = |e: Error| Error::Parse(format!("{}: {e}", path.display()));
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => AlgebraDescription::from_json(&text).map_err(with_path),
        _ => AlgebraDescription::from_toml(&text).map_err(with_path),
    }
}

impl Session {
    fn open(cli: &Cli, path: &Path) -> tauex::Result<Session> {
        let algebra = BoundQuiverAlgebra::build(&read_description(path)?)?;
        let catalog = Arc::new(Catalog::build(&algebra, cli.dim_bound.clone())?);
        Ok(Session { algebra, catalog, json: cli.json })
    }

    fn require_certificate(&self) -> tauex::Result<()> {
        if self.catalog.is_certified() {
            return Ok(());
        }
        let c = self.catalog.certificate();
        Err(Error::NotCertifiablyComplete(format!(
            "{} indecomposables below {:?}, {} below the enlarged bound{}; raise --dim-bound",
            c.count,
            self.catalog.bound(),
            c.count_at_bound_plus_one,
            if c.touches_bound { ", some module reaches the bound" } else { "" }
        )))
    }

    fn seq_engine(&self) -> tauex::Result<Arc<SeqEngine>> {
        self.require_certificate()?;
        Ok(Arc::new(SeqEngine::new(Arc::new(Engine::new(self.catalog.clone())?))))
    }

    fn algebra_json(&self) -> Value {
        let c = self.catalog.certificate();
        json!({
            "vertices": self.algebra.quiver().vertices,
            "arrows": self.algebra.quiver().arrows.len(),
            "relations": self.algebra.relations().len(),
            "characteristic": self.algebra.description().field.characteristic,
            "dim": self.algebra.dim(),
            "rank": self.algebra.rank(),
            "certificate": {
                "certified": self.catalog.is_certified(),
                "bound": self.catalog.bound(),
                "count": c.count,
                "count_at_enlarged_bound": c.count_at_bound_plus_one,
                "touches_bound": c.touches_bound,
            },
        })
    }

    fn emit(&self, command: &str, mut body: Value, text: &str) {
        if self.json {
            let obj = body.as_object_mut().expect("report body is an object");
            obj.insert("schema".into(), json!(1));
            obj.insert("command".into(), json!(command));
            obj.insert("algebra".into(), self.algebra_json());
            println!("{}", serde_json::to_string_pretty(&body).expect("report serializes"));
        } else {
            print!("{text}");
        }
    }

    fn sequence(&self, seq: &SeqEngine, text: &str) -> tauex::Result<TauES> {
        seq.tes(parse_sequence(&self.catalog, text)?)
    }

    fn label_seq(&self, x: &TauES) -> String {
        format_sequence(&self.catalog, x.terms())
    }

    fn j_filter(&self, seq: &SeqEngine, filter: &JFilter) -> tauex::Result<Wide> {
        let e = seq.engine();
        let Some(text) = &filter.j else { return Ok(e.wide(Default::default())) };
        let mut t = StrObject::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            t = t.with(self.catalog.parse_object(part)?);
        }
        e.j(e.whole(), t)
    }
}

fn inspect(s: &Session) -> Outcome {
    let c = &s.catalog;
    let status = if c.is_certified() { "certified" } else { "NOT certified" };
    let mut text =
        format!("dim {}, n {}, {} indecomposables, {}\n", s.algebra.dim(), s.algebra.rank(), c.len(), status);
    let mut rows = Vec::new();
    for i in c.ids() {
        let mut tags = Vec::new();
        if let Some(v) = c.vertex_of_projective(i) {
            tags.push(format!("P{}", s.algebra.vertex_name(v)));
        }
        if c.is_tau_rigid(i) {
            tags.push("τ-rigid".to_string());
        }
        text.push_str(&format!("  {:<10} {:?} {}\n", c.label(i), c.dims(i), tags.join(" ")));
        rows.push(json!({
            "label": c.label(i),
            "dims": c.dims(i),
            "projective": c.is_projective(i),
            "tau_rigid": c.is_tau_rigid(i),
        }));
    }
    if !c.is_certified() {
        eprintln!("advisory: {}", s.require_certificate().unwrap_err());
    }
    s.emit("inspect", json!({ "indecomposables": rows }), &text);
    Ok(())
}

fn tes(s: &Session, action: &TesAction) -> Outcome {
    let seq = s.seq_engine()?;
    let whole = seq.whole();
    match action {
        TesAction::Enumerate { filter } => {
            let w = s.j_filter(&seq, filter)?;
            let list = seq.sequences_with_j(whole, w.members)?;
            let labels: Vec<String> = list.iter().map(|x| s.label_seq(x)).collect();
            let mut text = format!("{} sequences with J = {}\n", list.len(), s.catalog.set_label(w.members));
            for l in &labels {
                text.push_str(&format!("  {l}\n"));
            }
            s.emit("tes enumerate", json!({ "j": s.catalog.set_label(w.members), "sequences": labels }), &text);
        }
        TesAction::Mutate { op, index, seq: text } => {
            let x = s.sequence(&seq, text)?;
            let y = seq.mutate(&x, *op, *index)?;
            let step = Step { op: *op, index: *index, exponent: 1 };
            let out = format!("{} {} = {}\n", step, s.label_seq(&x), s.label_seq(&y));
            s.emit(
                "tes mutate",
                json!({ "step": step.to_string(), "source": s.label_seq(&x), "result": s.label_seq(&y) }),
                &out,
            );
        }
        TesAction::Path { from, to } => {
            let x1 = s.sequence(&seq, from)?;
            let x2 = s.sequence(&seq, to)?;
            let word = seq.transitivity_path(&x1, &x2)?;
            let applied = seq.apply(&x1, &word.steps)? == x2;
            let text = format!(
                "from {}\nto   {}\nword {} (length {})\napplied: {}\n",
                s.label_seq(&x1),
                s.label_seq(&x2),
                word,
                word.len(),
                if applied { "OK" } else { "FAILED" }
            );
            s.emit(
                "tes path",
                json!({
                    "from": s.label_seq(&x1),
                    "to": s.label_seq(&x2),
                    "word": word.to_string(),
                    "steps": word.steps.iter().map(|st| json!({
                        "op": st.op.symbol(), "index": st.index, "exponent": st.exponent,
                    })).collect::<Vec<_>>(),
                    "length": word.len(),
                    "applied": applied,
                }),
                &text,
            );
            if !applied {
                return Err(Failure::Verification);
            }
        }
        TesAction::Graph { filter, dot } => {
            let w = s.j_filter(&seq, filter)?;
            let g = seq.mutation_graph(whole, w.members)?;
            if *dot {
                print!("{}", g.to_dot(&s.catalog));
                return Ok(());
            }
            let text = format!(
                "mutation graph for J = {}: {} vertices, {} φ-edges, {}\n",
                s.catalog.set_label(w.members),
                g.vertices.len(),
                g.edges.len(),
                if g.is_connected() { "connected" } else { "NOT connected" }
            );
            s.emit(
                "tes graph",
                json!({
                    "j": s.catalog.set_label(w.members),
                    "vertices": g.vertices.iter().map(|x| s.label_seq(x)).collect::<Vec<_>>(),
                    "edges": g.edges.iter().map(|&(a, b, i)| json!({ "from": a, "to": b, "op": "φ", "index": i })).collect::<Vec<_>>(),
                    "connected": g.is_connected(),
                }),
                &text,
            );
        }
    }
    Ok(())
}

fn verify(s: &Session, suite: Suite) -> Outcome {
    let seq = s.seq_engine()?;
    let verifier = Verifier::new(seq.clone());
    let results = verifier.run(suite)?;
    let counts = verifier.counts()?;
    let graph = seq.mutation_graph(seq.whole(), Default::default())?;
    let failed = results.iter().filter(|r| !r.ok()).count();
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{r}\n"));
        for f in &r.failures {
            text.push_str(&format!("    counterexample: {f}\n"));
        }
        if r.failures.len() < r.total - r.passed {
            text.push_str(&format!("    ({} more not shown)\n", r.total - r.passed - r.failures.len()));
        }
    }
    text.push_str(&format!(
        "counts: {} indecomposables, {} τ-rigid, {} torsion classes, {} wide subcategories, {} complete τ-es\n",
        counts.indecomposables,
        counts.tau_rigid,
        counts.torsion_classes,
        counts.wide_subcategories,
        counts.complete_sequences
    ));
    text.push_str(&format!(
        "mutation graph: {} vertices, {} φ-edges, {}\n",
        graph.vertices.len(),
        graph.edges.len(),
        if graph.is_connected() { "connected" } else { "NOT connected" }
    ));
    if failed == 0 {
        text.push_str(&format!("all {} checks passed\n", results.len()));
    } else {
        text.push_str(&format!("{failed} of {} checks FAILED\n", results.len()));
    }
    s.emit(
        "verify",
        json!({
            "suite": format!("{suite:?}").to_lowercase(),
            "checks": results,
            "counts": counts,
            "mutation_graph": {
                "vertices": graph.vertices.len(),
                "edges": graph.edges.len(),
                "connected": graph.is_connected(),
            },
            "passed": failed == 0,
        }),
        &text,
    );
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: &Cli) -> Outcome {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Parse(format!("--jobs: {e}")))?;
    }
    match &cli.command {
        Command::Inspect { file } => inspect(&Session::open(cli, file)?),
        Command::Tes { file, action } => tes(&Session::open(cli, file)?, action),
        Command::Verify { file, suite } => verify(&Session::open(cli, file)?, *suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
