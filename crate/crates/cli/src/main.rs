use clap::{Args, Parser, Subcommand, ValueEnum};
use realtame_core::homalg::{
    betti_koszul, colimit_below, koszul_certified, koszul_complex, minimal_resolution, tame_betti, VectFunctor,
};
use realtame_core::io::{
    betti_json, functor_to_dot, load_pipeline_config, read_json, to_dot, FunctorJson, GridJson, GridSpecJson,
    KoszulJson, PipelineOutputJson, PosetJson, RationalJson, TameJson,
};
use realtame_core::pipeline::pipeline_run;
use realtame_core::poset::{dim, par_dim, DimBudget, Poset};
use realtame_core::realisation::{Grid, GridSpec, RealPoint};
use realtame_core::transfer::tame::{GridTransfer, TameFunctor};
use realtame_core::Error;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "realtame", version, about = "Posets, realisation grids, tame functors and their Betti diagrams")]
struct Cli {
    /// Prime for the coefficient field; overrides `p` in input files.
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice predicates and dimensions of a poset
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Realisation grids and transfers onto them
    #[command(subcommand)]
    Grid(GridCmd),
    /// Functors given on a finite poset
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// Functors given on a grid, evaluated anywhere in the realisation
    #[command(subcommand)]
    Tame(TameCmd),
    /// From a metric dataset to H0 Betti diagrams
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Graphviz output
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Args)]
struct Budget {
    /// Largest down-set (and parent set) the dimension search may explore.
    #[arg(long, default_value_t = 24)]
    budget_dim: usize,
}

impl Budget {
    fn get(&self) -> DimBudget {
        DimBudget { max_down_set: self.budget_dim, max_parents: self.budget_dim }
    }
}

#[derive(Subcommand)]
enum PosetCmd {
    /// Report semilattice, distributivity, consistency and tree properties.
    Check {
        poset: PathBuf,
        /// Also compute dim and par-dim of every element.
        #[arg(long)]
        dims: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Dimension and parental dimension of one element.
    Dim {
        poset: PathBuf,
        element: String,
        #[command(flatten)]
        budget: Budget,
    },
}

#[derive(Args)]
struct GridOverrides {
    /// Replace the grid values, e.g. `--V=-1/2,-1/4`.
    #[arg(long = "V", value_delimiter = ',', allow_hyphen_values = true)]
    values: Option<Vec<String>>,
    /// Use the down-set of this element as the grid domain.
    #[arg(long)]
    d: Option<String>,
}

impl GridOverrides {
    fn spec(&self, path: &Path) -> Result<GridSpec, Failure> {
        let mut j: GridSpecJson = read_json(path)?;
        if let Some(v) = &self.values {
            j.domain.values = v.iter().map(|s| RationalJson::Text(s.clone())).collect();
        }
        if let Some(d) = &self.d {
            j.domain.d = Some(d.clone());
            j.domain.domain = None;
        }
        Ok(j.to_spec()?)
    }
}

#[derive(Subcommand)]
enum GridCmd {
    /// Build the grid and list its points and covers.
    Build {
        spec: PathBuf,
        #[command(flatten)]
        over: GridOverrides,
    },
    /// Send a realisation point to the largest grid point below it.
    Transfer {
        spec: PathBuf,
        point: String,
        #[command(flatten)]
        over: GridOverrides,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Koszul,
    Resolution,
    Both,
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// Check shapes and functoriality.
    Validate { functor: PathBuf },
    /// Betti diagrams in degrees `0..=max-degree`.
    Betti {
        functor: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// The colimit of the functor over the elements strictly below one.
    Colimit {
        functor: PathBuf,
        element: String,
        /// Restrict to products of parent sets (needs a semilattice).
        #[arg(long)]
        use_cofinal_reduction: bool,
    },
    /// The Koszul complex at one element.
    Koszul { functor: PathBuf, element: String },
}

#[derive(Subcommand)]
enum TameCmd {
    /// Value at a point, and the map to a second point with `--to`.
    Eval {
        tame: PathBuf,
        point: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Betti diagrams on the grid, refining it where higher degrees need it.
    Betti {
        tame: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Dataset and subsets to grid subsets, H0 functor and Betti diagrams.
    Run {
        config: PathBuf,
        /// Override the connectivity scale.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Hasse diagram of a poset, or of a functor's poset with dimensions.
    Dot { input: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Io(_)) => 1,
            Failure::Core(_) | Failure::Usage(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Mismatch(m) => write!(f, "methods disagree: {m}"),
        }
    }
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    Ok(read_json::<PosetJson>(path)?.to_poset()?)
}

fn load_functor(path: &Path, prime: Option<u32>) -> Result<VectFunctor, Failure> {
    let mut j: FunctorJson = read_json(path)?;
    if let Some(p) = prime {
        j.p = p;
    }
    Ok(j.to_functor()?)
}

fn load_tame(path: &Path, prime: Option<u32>) -> Result<TameFunctor, Failure> {
    let mut j: TameJson = read_json(path)?;
    if let Some(p) = prime {
        j.p = p;
    }
    Ok(j.to_tame()?)
}

fn poset_report(p: &Poset, dims: bool, budget: DimBudget) -> Result<Value, Failure> {
    let semilattice = p.is_upper_semilattice();
    let distributive = if semilattice { Some(p.is_distributive()?) } else { None };
    let violation = p.consistency_violation().map(|(a, b, x)| json!({"a": p.name(a), "b": p.name(b), "x": p.name(x)}));
    let mut report = json!({
        "elements": p.len(),
        "covers": p.covers().len(),
        "upper_semilattice": semilattice,
        "distributive": distributive,
        "consistent": violation.is_none(),
        "consistency_violation": violation,
        "connected": p.is_connected(),
        "forest": p.is_forest(),
        "tree": p.is_tree(),
    });
    if dims {
        let mut table = serde_json::Map::new();
        for x in p.elements() {
            table.insert(p.name(x).into(), json!({"dim": dim(p, x, budget)?, "par_dim": par_dim(p, x, budget)?}));
        }
        report["dims"] = Value::Object(table);
    }
    Ok(report)
}

fn functor_betti(g: &VectFunctor, method: Method, max_degree: usize) -> Result<Value, Failure> {
    let p = g.poset();
    let resolution = match method {
        Method::Koszul => None,
        _ => Some(minimal_resolution(g, max_degree)?),
    };
    let mut degrees = Vec::new();
    for i in 0..=max_degree {
        let mut entry = json!({"degree": i});
        let mut koszul = None;
        if !matches!(method, Method::Resolution) {
            let mut values = vec![0; p.len()];
            let mut uncertified = Vec::new();
            for a in p.elements() {
                if koszul_certified(g, a, i) {
                    values[a] = betti_koszul(g, a, i)?;
                } else {
                    // report the homology, but never as a Betti number
                    let h = koszul_complex(g, a)?.homology_dim(i);
                    uncertified.push(json!({"element": p.name(a), "homology": h}));
                }
            }
            entry["koszul"] = json!(betti_json(p, &values));
            entry["uncertified"] = json!(uncertified);
            koszul = Some(values);
        }
        if let Some(r) = &resolution {
            let values = r.betti(i);
            if let Some(k) = &koszul {
                for a in p.elements() {
                    if koszul_certified(g, a, i) && k[a] != values[a] {
                        return Err(Failure::Mismatch(format!(
                            "degree {i} at {}: koszul {} vs resolution {}",
                            p.name(a),
                            k[a],
                            values[a]
                        )));
                    }
                }
            }
            entry["resolution"] = json!(betti_json(p, &values));
        }
        degrees.push(entry);
    }
    Ok(json!({"p": g.field().p(), "degrees": degrees}))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let prime = cli.prime;
    let value = match &cli.command {
        Command::Poset(PosetCmd::Check { poset, dims, budget }) => {
            poset_report(&load_poset(poset)?, *dims, budget.get())?
        }
        Command::Poset(PosetCmd::Dim { poset, element, budget }) => {
            let p = load_poset(poset)?;
            let x = p.index_of(element)?;
            json!({"element": element, "dim": dim(&p, x, budget.get())?, "par_dim": par_dim(&p, x, budget.get())?})
        }
        Command::Grid(GridCmd::Build { spec, over }) => json!(GridJson::from_grid(&Grid::build(over.spec(spec)?)?)),
        Command::Grid(GridCmd::Transfer { spec, point, over }) => {
            let spec = over.spec(spec)?;
            let p = RealPoint::parse(&spec.base, point)?;
            let image = GridTransfer::new(&spec)?.apply(&p);
            json!({"point": p.encode(&spec.base), "transfer": image.map_or("-inf".to_string(), |q| q.encode(&spec.base))})
        }
        Command::Functor(FunctorCmd::Validate { functor }) => {
            let g = load_functor(functor, prime)?;
            json!({"valid": true, "elements": g.poset().len(), "total_dim": g.total_dim()})
        }
        Command::Functor(FunctorCmd::Betti { functor, method, max_degree }) => {
            functor_betti(&load_functor(functor, prime)?, *method, *max_degree)?
        }
        Command::Functor(FunctorCmd::Colimit { functor, element, use_cofinal_reduction }) => {
            let g = load_functor(functor, prime)?;
            let a = g.poset().index_of(element)?;
            let c = colimit_below(&g, a, *use_cofinal_reduction)?;
            json!({"element": element, "dim": c.dim, "index_size": c.index.len()})
        }
        Command::Functor(FunctorCmd::Koszul { functor, element }) => {
            let g = load_functor(functor, prime)?;
            let a = g.poset().index_of(element)?;
            json!(KoszulJson::from_complex(g.poset(), &koszul_complex(&g, a)?))
        }
        Command::Tame(TameCmd::Eval { tame, point, to }) => {
            let t = load_tame(tame, prime)?;
            let base = t.grid.base();
            let p = RealPoint::parse(base, point)?;
            let v = t.eval(&p)?;
            let mut out = json!({
                "point": p.encode(base),
                "grid_element": v.grid_element.map(|g| t.grid.poset.name(g).to_string()),
                "dim": v.dim,
            });
            if let Some(q) = to {
                let q = RealPoint::parse(base, q)?;
                out["to"] = json!(q.encode(base));
                out["map"] = json!(t.eval_map(&p, &q)?.to_rows());
            }
            out
        }
        Command::Tame(TameCmd::Betti { tame, max_degree }) => {
            let t = load_tame(tame, prime)?;
            let diagrams = (0..=*max_degree)
                .map(|i| Ok(betti_json(&t.grid.poset, &tame_betti(&t, i)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            json!({"betti": diagrams})
        }
        Command::Pipeline(PipelineCmd::Run { config, epsilon, max_degree }) => {
            let mut c = load_pipeline_config(config)?;
            if let Some(e) = epsilon {
                c.epsilon = realtame_core::realisation::parse_rational(e)?;
            }
            if let Some(k) = max_degree {
                c.max_degree = *k;
            }
            if let Some(p) = prime {
                c.field = realtame_core::linalg::PrimeField::new(p)?;
            }
            json!(PipelineOutputJson::new(&c, &pipeline_run(&c)?))
        }
        Command::Export(ExportCmd::Dot { input }) => {
            let raw: Value = read_json(input)?;
            return if raw.get("dims").is_some() {
                Ok(functor_to_dot(&load_functor(input, prime)?))
            } else if raw.get("elements").is_some() {
                Ok(to_dot(&load_poset(input)?))
            } else {
                Err(Failure::Usage(format!("{} is neither a poset nor a functor", input.display())))
            };
        }
    };
    Ok(serde_json::to_string_pretty(&value).map_err(Error::from)? + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|text| match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Core(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
