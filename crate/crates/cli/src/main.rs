//! Command-line front end: scaffolds, limits, colimits, generalized ranks,
//! Betti supports, and the benchmark harness.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_scaffold::grid::{parse_interval, GridInterval, GridPoint};
use poset_scaffold::grid_scaffold::{
    final_scaffold_grid, initial_scaffold_grid, koszul_beta1_support, GridAlgo,
};
use poset_scaffold::instances::{band_interval_2d, n4_family_minima, random_staircase_minima_3d};
use poset_scaffold::limits::{
    colimit_interval_complex, colimit_interval_rep, colimit_poset_complex, colimit_poset_rep,
    grank_interval_complex, grank_interval_rep, grank_poset_complex, grank_poset_rep,
    limit_interval_complex, limit_interval_rep, limit_poset_complex, limit_poset_rep,
    limit_presections, ColimitBasis, GrankReport, PresectionBasis,
};
use poset_scaffold::linalg::PrimeField;
use poset_scaffold::order::ProductOrder;
use poset_scaffold::poset::{parse_hasse, Poset};
use poset_scaffold::rep::{
    free_module_rep, parse_module_rep, parse_qr_complex, resolve_complex, resolve_rep_grid,
    resolve_rep_poset, QrcGrades,
};
use poset_scaffold::scaffold::{
    final_scaffold, initial_scaffold, write_scaffold_grid, write_scaffold_poset,
};

#[derive(Parser)]
#[command(
    name = "scaffold",
    about = "Minimal initial/final functors of posets and grid intervals, \
             with limit, colimit, and generalized-rank computation over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an initial scaffold of a poset or grid interval
    Scaffold(CommonArgs),
    /// Compute a final scaffold (dual; grid intervals must be finite)
    #[command(name = "final-scaffold")]
    FinalScaffold(CommonArgs),
    /// Compute a presection basis of the limit of a module
    Limit(CommonArgs),
    /// Compute a quotient basis of the colimit of a module
    Colimit(CommonArgs),
    /// Compute the generalized rank of a module over a connected index poset
    Grank(CommonArgs),
    /// Support of the first Betti numbers of the upset of the given minima
    #[command(name = "betti1-support")]
    Betti1Support(CommonArgs),
    /// Deterministic benchmark table (CSV)
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    General,
    Sweep,
    Joins,
}

impl Algo {
    fn grid(self) -> GridAlgo {
        match self {
            Algo::Sweep => GridAlgo::Sweep,
            Algo::Joins => GridAlgo::Joins,
            _ => GridAlgo::Auto,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Finite poset in the Hasse text format
    #[arg(long)]
    hasse: Option<PathBuf>,
    /// Grid interval in the interval text format
    #[arg(long)]
    interval: Option<PathBuf>,
    /// Three-term complex of free modules (qr-complex format)
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Direct module representation (dim/map format)
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Field modulus for --rep input (complex files carry their own)
    #[arg(long, default_value_t = PrimeField::DEFAULT_MODULUS)]
    field: u64,
    /// Scaffold algorithm (auto: sweep for d <= 3, joins above, general for Hasse input)
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (computations are deterministic regardless)
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Trust interval inputs without connectivity validation
    #[arg(long)]
    skip_validate: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Seed for deterministic instance generation
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the naive-limit column when the materialization exceeds this
    #[arg(long, default_value_t = 200_000)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Scaffold(args) => scaffold_cmd(&args, false),
        Command::FinalScaffold(args) => scaffold_cmd(&args, true),
        Command::Limit(args) => limit_cmd(&args),
        Command::Colimit(args) => colimit_cmd(&args),
        Command::Grank(args) => grank_cmd(&args),
        Command::Betti1Support(args) => betti_cmd(&args),
        Command::Bench(args) => bench_cmd(&args),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

enum Index {
    Poset(Poset),
    Interval(GridInterval),
}

fn load_index(args: &CommonArgs) -> Result<Index> {
    match (&args.hasse, &args.interval) {
        (Some(h), None) => Ok(Index::Poset(parse_hasse(&read(h)?)?)),
        (None, Some(i)) => Ok(Index::Interval(parse_interval(
            &read(i)?,
            args.skip_validate,
        )?)),
        (None, None) => bail!("provide --hasse or --interval"),
        _ => bail!("--hasse and --interval are mutually exclusive"),
    }
}

fn scaffold_cmd(args: &CommonArgs, is_final: bool) -> Result<()> {
    let text = match load_index(args)? {
        Index::Poset(p) => {
            let s = if is_final {
                final_scaffold(&p)
            } else {
                initial_scaffold(&p)
            };
            write_scaffold_poset(&s, &p)
        }
        Index::Interval(q) => {
            let s = if is_final {
                final_scaffold_grid(&q, args.algo.grid())?
            } else {
                initial_scaffold_grid(&q, args.algo.grid())?
            };
            write_scaffold_grid(&s)
        }
    };
    emit(&args.out, &text)
}

enum Module {
    Complex(PathBuf),
    Rep(PathBuf),
}

fn module_source(args: &CommonArgs) -> Result<Module> {
    match (&args.complex, &args.rep) {
        (Some(c), None) => Ok(Module::Complex(c.clone())),
        (None, Some(r)) => Ok(Module::Rep(r.clone())),
        (None, None) => bail!("provide --complex or --rep"),
        _ => bail!("--complex and --rep are mutually exclusive"),
    }
}

fn format_presections<E: Ord + Clone>(
    lim: &PresectionBasis<E>,
    name: impl Fn(&E) -> String,
) -> String {
    let mut out = format!("limit dim={}\n", lim.dim());
    for (m, d) in lim.minima.iter().zip(&lim.fiber_dims) {
        out.push_str(&format!("min {} {}\n", name(m), d));
    }
    out.push_str(&format!(
        "basis {} {}\n",
        lim.basis.rows(),
        lim.basis.cols()
    ));
    out.push_str(&lim.basis.to_string());
    out
}

fn format_colimit<E: Ord + Clone>(col: &ColimitBasis<E>, name: impl Fn(&E) -> String) -> String {
    let mut out = format!("colimit dim={}\n", col.dim());
    for (w, d) in col.maxima.iter().zip(&col.fiber_dims) {
        out.push_str(&format!("max {} {}\n", name(w), d));
    }
    out.push_str(&format!(
        "projection {} {}\n",
        col.projection.rows(),
        col.projection.cols()
    ));
    out.push_str(&col.projection.to_string());
    out
}

fn format_grank<E>(r: &GrankReport<E>, name: impl Fn(&E) -> String) -> String {
    format!(
        "grank {}\ndim-lim {}\ndim-colim {}\npair {} {}\n",
        r.grank,
        r.dim_lim,
        r.dim_colim,
        name(&r.m),
        name(&r.w)
    )
}

fn limit_cmd(args: &CommonArgs) -> Result<()> {
    let index = load_index(args)?;
    let text = match (index, module_source(args)?) {
        (Index::Poset(p), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Named(named) = file.grades else {
                bail!("complex grades are grid points but the index is a poset");
            };
            let complex = resolve_complex(&named, &p)?;
            let (_, lim) = limit_poset_complex(&p, &complex, file.field)?;
            format_presections(&lim, |i| p.name(*i).to_string())
        }
        (Index::Poset(p), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_poset(&parse_module_rep(&read(&path)?, field)?, &p)?;
            let (_, lim) = limit_poset_rep(&p, &rep)?;
            format_presections(&lim, |i| p.name(*i).to_string())
        }
        (Index::Interval(q), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Grid { d, complex } = file.grades else {
                bail!("complex grades are poset elements but the index is a grid interval");
            };
            if d != q.dim() {
                bail!(
                    "complex dimension {d} disagrees with interval dimension {}",
                    q.dim()
                );
            }
            let (_, lim) = limit_interval_complex(&q, &complex, file.field, args.algo.grid())?;
            format_presections(&lim, |p: &GridPoint| p.token())
        }
        (Index::Interval(q), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_grid(&parse_module_rep(&read(&path)?, field)?, q.dim())?;
            let (_, lim) = limit_interval_rep(&q, &rep, args.algo.grid())?;
            format_presections(&lim, |p: &GridPoint| p.token())
        }
    };
    emit(&args.out, &text)
}

fn colimit_cmd(args: &CommonArgs) -> Result<()> {
    let index = load_index(args)?;
    let text = match (index, module_source(args)?) {
        (Index::Poset(p), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Named(named) = file.grades else {
                bail!("complex grades are grid points but the index is a poset");
            };
            let complex = resolve_complex(&named, &p)?;
            let (_, col) = colimit_poset_complex(&p, &complex, file.field)?;
            format_colimit(&col, |i| p.name(*i).to_string())
        }
        (Index::Poset(p), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_poset(&parse_module_rep(&read(&path)?, field)?, &p)?;
            let (_, col) = colimit_poset_rep(&p, &rep)?;
            format_colimit(&col, |i| p.name(*i).to_string())
        }
        (Index::Interval(q), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Grid { d, complex } = file.grades else {
                bail!("complex grades are poset elements but the index is a grid interval");
            };
            if d != q.dim() {
                bail!(
                    "complex dimension {d} disagrees with interval dimension {}",
                    q.dim()
                );
            }
            let (_, col) = colimit_interval_complex(&q, &complex, file.field, args.algo.grid())?;
            format_colimit(&col, |p: &GridPoint| p.token())
        }
        (Index::Interval(q), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_grid(&parse_module_rep(&read(&path)?, field)?, q.dim())?;
            let (_, col) = colimit_interval_rep(&q, &rep, args.algo.grid())?;
            format_colimit(&col, |p: &GridPoint| p.token())
        }
    };
    emit(&args.out, &text)
}

fn grank_cmd(args: &CommonArgs) -> Result<()> {
    let index = load_index(args)?;
    let text = match (index, module_source(args)?) {
        (Index::Poset(p), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Named(named) = file.grades else {
                bail!("complex grades are grid points but the index is a poset");
            };
            let complex = resolve_complex(&named, &p)?;
            let r = grank_poset_complex(&p, &complex, file.field)?;
            format_grank(&r, |i| p.name(*i).to_string())
        }
        (Index::Poset(p), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_poset(&parse_module_rep(&read(&path)?, field)?, &p)?;
            let r = grank_poset_rep(&p, &rep)?;
            format_grank(&r, |i| p.name(*i).to_string())
        }
        (Index::Interval(q), Module::Complex(path)) => {
            let file = parse_qr_complex(&read(&path)?)?;
            let QrcGrades::Grid { d, complex } = file.grades else {
                bail!("complex grades are poset elements but the index is a grid interval");
            };
            if d != q.dim() {
                bail!(
                    "complex dimension {d} disagrees with interval dimension {}",
                    q.dim()
                );
            }
            let r = grank_interval_complex(&q, &complex, file.field, args.algo.grid())?;
            format_grank(&r, |p: &GridPoint| p.token())
        }
        (Index::Interval(q), Module::Rep(path)) => {
            let field = PrimeField::new(args.field)?;
            let rep = resolve_rep_grid(&parse_module_rep(&read(&path)?, field)?, q.dim())?;
            let r = grank_interval_rep(&q, &rep, args.algo.grid())?;
            format_grank(&r, |p: &GridPoint| p.token())
        }
    };
    emit(&args.out, &text)
}

fn betti_cmd(args: &CommonArgs) -> Result<()> {
    let Some(path) = &args.interval else {
        bail!("betti1-support expects --interval (the minima are the ideal's generators)");
    };
    let q = parse_interval(&read(path)?, args.skip_validate)?;
    let support = koszul_beta1_support(q.minima(), None);
    let mut out = String::new();
    for p in &support.beta1 {
        let coords: Vec<String> = p.0.iter().map(|c| c.to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    emit(&args.out, &out)
}

fn bench_cmd(args: &BenchArgs) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut csv = String::from(
        "instance,n,d,r,scaffold_size,t_scaffold_ms,t_limit_scaffold_ms,t_limit_naive_ms\n",
    );
    let ms = |t: std::time::Duration| format!("{:.3}", t.as_secs_f64() * 1e3);

    // trivial instance
    {
        let q =
            GridInterval::upset(3, vec![GridPoint(vec![0, 0, 0])]).map_err(|e| anyhow!("{e}"))?;
        let t = Instant::now();
        let s = initial_scaffold_grid(&q, GridAlgo::Auto)?;
        csv.push_str(&format!(
            "trivial,1,3,0,{},{},,\n",
            s.size(),
            ms(t.elapsed())
        ));
    }

    // linear-size family: random 3-d staircases
    for exp in 4..=10 {
        let n = 1usize << exp;
        let minima = random_staircase_minima_3d(&mut rng, n, 1 << 16);
        let q = GridInterval::upset(3, minima).map_err(|e| anyhow!("{e}"))?;
        let t = Instant::now();
        let s = initial_scaffold_grid(&q, GridAlgo::Sweep)?;
        csv.push_str(&format!(
            "d3-scale,{n},3,0,{},{},,\n",
            s.size(),
            ms(t.elapsed())
        ));
    }

    // quadratic-size family in four dimensions
    for k in 1..=20u64 {
        let q = GridInterval::upset(4, n4_family_minima(k)).map_err(|e| anyhow!("{e}"))?;
        let t = Instant::now();
        let s = initial_scaffold_grid(&q, GridAlgo::Joins)?;
        csv.push_str(&format!(
            "n4-family,{},4,0,{},{},,\n",
            2 * (k + 1),
            s.size(),
            ms(t.elapsed())
        ));
    }

    // limit computation: scaffold route vs materialized route
    for n in [250usize, 500, 1000] {
        let field = PrimeField::default_field();
        let q = band_interval_2d(n, 12);
        let r = 20.min(n / 2);
        let generators: Vec<GridPoint> = (0..r).map(|i| q.minima()[i * (n / r)].clone()).collect();

        let t = Instant::now();
        let s = initial_scaffold_grid(&q, GridAlgo::Sweep)?;
        let t_scaffold = t.elapsed();
        let scaffold_size = s.size();

        let t = Instant::now();
        let rep = free_module_rep(&generators, &s.elements, &s.relations, &ProductOrder, field);
        let lim = limit_presections(&rep)?;
        let t_lim_scaffold = t.elapsed();

        let naive = match q.enumerate(None, args.cap) {
            Ok(points) => {
                let t = Instant::now();
                let mut rels = Vec::new();
                for p in &points {
                    for m in q.minima() {
                        if m != p && m.leq(p) {
                            rels.push((m.clone(), p.clone()));
                        }
                    }
                }
                let naive_rep = free_module_rep(&generators, &points, &rels, &ProductOrder, field);
                let naive_lim = limit_presections(&naive_rep)?;
                assert_eq!(naive_lim.dim(), lim.dim());
                ms(t.elapsed())
            }
            Err(_) => String::new(),
        };
        csv.push_str(&format!(
            "d2-limit,{n},2,{r},{scaffold_size},{},{},{naive}\n",
            ms(t_scaffold),
            ms(t_lim_scaffold)
        ));
    }

    emit(&args.out, &csv)
}
