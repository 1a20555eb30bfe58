//! Argument parsing and the subcommands of the `addcomb` binary.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use addcomb_core::bohr::{find_regular_dilate, BohrSet};
use addcomb_core::configs::{
    behrend_set, check_interval_embedding, count_k_configurations,
    find_nondegenerate_configuration, random_set, CliqueConfig,
};
use addcomb_core::gridnorm::{
    counting_dichotomy, deviation_test, grid_norm, homomorphism_count, GridNormConfig, WitnessKind,
};
use addcomb_core::increment::{
    holder_lifting_scan, increment_search, sift, IncrementConfig, SiftInstance, SiftResult,
};
use addcomb_core::sumfree::{
    default_modulus, exact_m, greedy_sumfree, min_m_over_universe, pipeline_extract, ruzsa_embed,
    EmbedConfig, EmbedOutcome, IntegerSet, SumfreeConfig,
};
use addcomb_core::FiniteAbelianGroup;
use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use crate::failure::{CliResult, Failure};
use crate::formats::{
    format_character, format_group_set, format_integer_set, parse_characters, parse_group_set,
    parse_instance, parse_integer_set, parse_moduli, parse_table, read_text, GroupSpec,
};
use crate::table::{join, Table};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "addcomb",
    version,
    about = "Experiments in additive combinatorics"
)]
pub struct Cli {
    /// Write the report as CSV to this path (`-` for stdout).
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Cyclic factors of the group, e.g. `3,5`.
    #[arg(long, conflicts_with = "interval")]
    pub group: Option<String>,
    /// Work in `[N]` embedded in `Z/(2N+1)`.
    #[arg(long)]
    pub interval: Option<u64>,
}

impl GroupArgs {
    fn spec(&self) -> CliResult<GroupSpec> {
        match (&self.group, self.interval) {
            (Some(g), None) => Ok(GroupSpec::Moduli(parse_moduli(g)?)),
            (None, Some(n)) if n >= 1 => Ok(GroupSpec::Interval(n)),
            (None, Some(_)) => Err(Failure::config("--interval must be at least 1")),
            _ => Err(Failure::config("give exactly one of --group or --interval")),
        }
    }
}

#[derive(Debug, Args)]
pub struct SetArgs {
    /// File listing the elements of the set.
    #[arg(long, conflicts_with = "density")]
    pub set_file: Option<PathBuf>,
    /// Draw the set at random with this density instead.
    #[arg(long)]
    pub density: Option<f64>,
}

impl SetArgs {
    fn load(&self, spec: &GroupSpec, seed: u64) -> CliResult<Vec<usize>> {
        match (&self.set_file, self.density) {
            (Some(path), None) => parse_group_set(&read_text(path)?, spec),
            (None, Some(d)) => {
                let g = spec.group()?;
                let set = random_set(g.order(), d, seed)?;
                Ok(match spec {
                    // only the image of [N] is a valid interval set
                    GroupSpec::Interval(n) => set
                        .into_iter()
                        .filter(|&x| x >= 1 && x as u64 <= *n)
                        .collect(),
                    GroupSpec::Moduli(_) => set,
                })
            }
            _ => Err(Failure::config(
                "give exactly one of --set-file or --density",
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Size, size bound and regularity of a Bohr set.
    Bohr {
        #[command(flatten)]
        group: GroupArgs,
        /// Frequencies as coefficient tuples separated by `;`, e.g. `1,0;2,3`.
        #[arg(long)]
        freqs: String,
        #[arg(long)]
        width: f64,
        /// Replace the width by a regular dilate found by search.
        #[arg(long)]
        regularize: bool,
        /// Scale the width by this factor first.
        #[arg(long)]
        dilate: Option<f64>,
        /// Write the members to this set file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid norm of a 0/1 table.
    Gridnorm {
        #[arg(long)]
        table_file: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Homomorphism count, deviation test and dichotomy witness.
    CountHom {
        #[arg(long)]
        instance_file: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Count k-tuples whose pairwise midpoints lie in the set.
    CountConfigs {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Find a non-degenerate k-configuration.
    FindConfig {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// A large subset of [N] without three-term progressions.
    Behrend {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare configurations of A in [N] with those of its image mod 2N+1.
    Embed {
        #[arg(long)]
        interval: u64,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Random shifts until both sifted sets are dense and correlated.
    Sift {
        #[command(flatten)]
        group: GroupArgs,
        /// Density of the two random sets.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Scan L^p norms of the balanced convolution for the lifting alternatives.
    LiftingScan {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value_t = 16)]
        p_cap: u32,
    },
    /// Look for a denser translate on a refined regular Bohr set.
    ///
    /// A set drawn with `--density` is restricted to the Bohr set.
    IncrementSearch {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        freqs: String,
        #[arg(long)]
        width: f64,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Exact size of the largest sum-free subset.
    SumfreeM {
        #[arg(long, conflicts_with_all = ["size", "universe"])]
        set_file: Option<PathBuf>,
        /// Minimise over all sets of this size inside `[1, universe]`.
        #[arg(long, requires = "universe")]
        size: Option<usize>,
        #[arg(long, requires = "size")]
        universe: Option<usize>,
    },
    /// Greedy sum-free subset.
    SumfreeGreedy {
        #[arg(long)]
        set_file: PathBuf,
    },
    /// Freiman 2-isomorphic image of a large subset in a cyclic group.
    EmbedFreiman {
        #[arg(long)]
        set_file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Largest subset of X with no pairwise sum in Y, stopping at k elements.
    Pipeline {
        #[arg(long)]
        x_file: PathBuf,
        #[arg(long)]
        y_file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Restrict to these scopes (`all` by default).
        #[arg(long, value_delimiter = ',')]
        scope: Vec<String>,
    },
}

/// A table plus free-form lines printed under it in text mode.
pub struct Report {
    pub table: Table,
    pub notes: Vec<String>,
    pub success: bool,
}

impl Report {
    fn new(table: Table) -> Self {
        Report {
            table,
            notes: Vec::new(),
            success: true,
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| Failure::Other(format!("cannot write {}: {e}", path.display())))
}

/// Prints the report and returns whether the command succeeded.
pub fn run(cli: &Cli) -> CliResult<bool> {
    let report = execute(&cli.command, cli.seed)?;
    match &cli.csv {
        Some(p) if p.as_os_str() == "-" => report.table.write_csv(io::stdout().lock())?,
        Some(p) => {
            let file = fs::File::create(p)
                .map_err(|e| Failure::Other(format!("cannot write {}: {e}", p.display())))?;
            report.table.write_csv(file)?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(report.table.to_text().as_bytes())?;
            for n in &report.notes {
                writeln!(out, "{n}")?;
            }
        }
    }
    Ok(report.success)
}

pub fn execute(command: &Command, seed: u64) -> CliResult<Report> {
    match command {
        Command::Bohr {
            group,
            freqs,
            width,
            regularize,
            dilate,
            out,
        } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let mut b = BohrSet::new(&g, parse_characters(freqs, &g)?, *width)?;
            if let Some(d) = dilate {
                b = b.dilate(*d)?;
            }
            if *regularize {
                let d = find_regular_dilate(&b)?;
                b = b.dilate(d)?;
            }
            let bound = b.size_bound_check()?;
            let reg = b.is_regular();
            if let Some(path) = out {
                write_file(path, &format_group_set(&g, &b.members()))?;
            }
            let mut t = Table::new(&[
                "group",
                "frequencies",
                "rank",
                "width",
                "size",
                "lower_bound",
                "bound_holds",
                "regular",
                "irregular_at",
            ]);
            let freqs: Vec<String> = b.frequencies().iter().map(format_character).collect();
            t.push(row![
                spec.describe(),
                join(freqs),
                b.rank(),
                b.width(),
                bound.size,
                bound.lower_bound,
                bound.pass,
                reg.regular,
                reg.witness
            ]);
            Ok(Report::new(t))
        }
        Command::Gridnorm { table_file, p, q } => {
            let table = parse_table(&read_text(table_file)?)?;
            let value = grid_norm(&table.to_matrix(), *p, *q, &GridNormConfig::default())?;
            let mut t = Table::new(&["rows", "cols", "density", "p", "q", "norm"]);
            t.push(row![
                table.rows(),
                table.cols(),
                table.ones() as f64 / table.cells() as f64,
                *p,
                *q,
                value
            ]);
            Ok(Report::new(t))
        }
        Command::CountHom { instance_file, eps } => {
            let inst = parse_instance(&read_text(instance_file)?)?;
            let cfg = GridNormConfig::default();
            let count = homomorphism_count(&inst, &cfg)?;
            let test = deviation_test(&inst, *eps, &cfg)?;
            let mut t = Table::new(&[
                "count",
                "total",
                "product_density",
                "lhs",
                "rhs",
                "fired",
                "delta",
                "edge",
                "witness",
            ]);
            let (edge, witness) = if test.fired {
                match counting_dichotomy(&inst, *eps, &cfg)? {
                    Some(w) => (Some(w.edge), describe_witness(&w.kind)),
                    None => {
                        return Err(Failure::Anomaly(
                            "deviation test fired but no witness was found".into(),
                        ))
                    }
                }
            } else {
                (None, String::new())
            };
            t.push(row![
                count.count,
                count.total,
                test.product_density,
                test.lhs,
                test.rhs,
                test.fired,
                test.delta,
                edge,
                witness
            ]);
            Ok(Report::new(t))
        }
        Command::CountConfigs { group, set, k } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let a = set.load(&spec, seed)?;
            let c = count_k_configurations(&g, &a, *k, &CliqueConfig::default())?;
            let mut t = Table::new(&[
                "group",
                "set_size",
                "k",
                "count",
                "total",
                "probability",
                "nondegenerate",
            ]);
            let prob = c.probability().to_f64().unwrap_or(f64::NAN);
            t.push(row![
                spec.describe(),
                a.len(),
                *k,
                c.count.to_string(),
                c.total.to_string(),
                prob,
                c.nondegenerate()
            ]);
            Ok(Report::new(t))
        }
        Command::FindConfig { group, set, k } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let a = set.load(&spec, seed)?;
            let found = find_nondegenerate_configuration(&g, &a, *k, &CliqueConfig::default())?;
            let mut t = Table::new(&["group", "set_size", "k", "found", "configuration"]);
            let shown = found
                .as_ref()
                .map(|c| join(c.iter().map(|&x| element_label(&spec, &g, x))));
            t.push(row![spec.describe(), a.len(), *k, found.is_some(), shown]);
            Ok(Report::new(t))
        }
        Command::Behrend { n, out } => {
            let set = behrend_set(*n)?;
            if let Some(path) = out {
                let text: String = set.iter().map(|v| format!("{v}\n")).collect();
                write_file(path, &text)?;
            }
            let mut t = Table::new(&["n", "size", "density"]);
            t.push(row![*n, set.len(), set.len() as f64 / *n as f64]);
            Ok(Report::new(t))
        }
        Command::Embed { interval, set, k } => {
            let spec = GroupSpec::Interval(*interval);
            let a: Vec<i64> = set
                .load(&spec, seed)?
                .into_iter()
                .map(|x| x as i64)
                .collect();
            let c = check_interval_embedding(*interval, &a, *k, &CliqueConfig::default())?;
            let mut t = Table::new(&[
                "interval",
                "set_size",
                "k",
                "in_interval",
                "in_group",
                "agree",
            ]);
            t.push(row![
                *interval,
                a.len(),
                *k,
                c.in_interval.map(join),
                c.in_group.map(join),
                c.agree
            ]);
            let mut r = Report::new(t);
            r.success = c.agree;
            Ok(r)
        }
        Command::Sift {
            group,
            density,
            eps,
            delta,
            p,
            trials,
        } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let full: Vec<usize> = (0..g.order()).collect();
            let a1 = random_set(g.order(), *density, seed.wrapping_mul(2).wrapping_add(1))?;
            let a2 = random_set(g.order(), *density, seed.wrapping_mul(2).wrapping_add(2))?;
            let inst = SiftInstance::new(&g, &a1, &a2, &full, &full, *p, *eps, *delta, seed)?;
            let mut t = Table::new(&[
                "accepted", "trials", "alpha1", "alpha2", "floor1", "floor2", "s_mass", "shifts",
            ]);
            match sift(&inst, *trials)? {
                SiftResult::Accepted(o) => {
                    t.push(row![
                        true,
                        o.trials,
                        o.alpha1,
                        o.alpha2,
                        o.floor1,
                        o.floor2,
                        o.s_mass,
                        join(&o.shifts)
                    ]);
                    Ok(Report::new(t))
                }
                SiftResult::Exhausted {
                    trials,
                    event_rate,
                    best_s_mass,
                } => {
                    t.push(row![
                        false,
                        trials,
                        None::<f64>,
                        None::<f64>,
                        None::<f64>,
                        None::<f64>,
                        best_s_mass,
                        ""
                    ]);
                    let mut r = Report::new(t).note(format!(
                        "no trial accepted; floors met in a fraction {event_rate} of trials"
                    ));
                    r.success = false;
                    Ok(r)
                }
            }
        }
        Command::LiftingScan {
            group,
            density,
            eps,
            p_cap,
        } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let full: Vec<usize> = (0..g.order()).collect();
            let draw =
                |j: u64| random_set(g.order(), *density, seed.wrapping_mul(3).wrapping_add(j));
            let (a1, a2, c) = (
                nonempty(draw(1)?)?,
                nonempty(draw(2)?)?,
                nonempty(draw(3)?)?,
            );
            let r = holder_lifting_scan(&g, &a1, &a2, &full, &full, &c, *eps, *p_cap)?;
            let mut t = Table::new(&["p", "norm", "reaches_half_eps"]);
            let target = 0.5 * eps * r.scale;
            for (i, n) in r.norms.iter().enumerate() {
                t.push(row![i + 1, *n, *n >= target]);
            }
            Ok(Report::new(t)
                .note(format!(
                    "inner product {} against scale {}; uniform: {}",
                    r.inner, r.scale, r.uniform
                ))
                .note(match r.p_found {
                    Some(p) => format!("first p reaching the threshold: {p}"),
                    None => "no p up to the cap reaches the threshold".into(),
                }))
        }
        Command::IncrementSearch {
            group,
            set,
            freqs,
            width,
            k,
        } => {
            let spec = group.spec()?;
            let g = spec.group()?;
            let b = BohrSet::new(&g, parse_characters(freqs, &g)?, *width)?;
            let mut a = set.load(&spec, seed)?;
            if set.set_file.is_none() {
                a.retain(|&x| b.contains(x));
            }
            let r = increment_search(&a, &b, *k, &IncrementConfig::default())?;
            let mut t = Table::new(&[
                "alpha",
                "proportion",
                "threshold_shape",
                "target",
                "candidates",
                "found",
                "x",
                "sign",
                "width",
                "density",
                "verified",
                "frequencies",
            ]);
            let w = r.witness.as_ref();
            t.push(row![
                r.alpha,
                r.proportion,
                r.threshold_shape,
                r.target,
                r.candidates_tried,
                w.is_some(),
                w.map(|w| element_label(&spec, &g, w.x)),
                w.map(|w| w.sign),
                w.map(|w| w.width),
                w.map(|w| w.density),
                w.map(|w| w.verified),
                w.map(|w| join(w.frequencies.iter().map(format_character)))
            ]);
            Ok(Report::new(t)
                .note("heuristic search over candidate refinements; a miss proves nothing"))
        }
        Command::SumfreeM {
            set_file,
            size,
            universe,
        } => {
            let cfg = SumfreeConfig::default();
            let (label, a, (m, witness)) = match (set_file, size, universe) {
                (Some(path), None, None) => {
                    let a = parse_integer_set(&read_text(path)?)?;
                    let res = exact_m(&a, &cfg)?;
                    (path.display().to_string(), a, res)
                }
                (None, Some(n), Some(u)) => {
                    let (m, w) = min_m_over_universe(*n, *u, &cfg)?;
                    // the minimiser is reported through its sum-free witness
                    (
                        format!("min over size {n} in [1,{u}]"),
                        IntegerSet::new(Vec::new()),
                        (m, w),
                    )
                }
                _ => {
                    return Err(Failure::config(
                        "give --set-file, or both --size and --universe",
                    ))
                }
            };
            let mut t = Table::new(&["input", "set_size", "m", "witness"]);
            t.push(row![label, a.len(), m, join(witness.iter())]);
            Ok(Report::new(t))
        }
        Command::SumfreeGreedy { set_file } => {
            let a = parse_integer_set(&read_text(set_file)?)?;
            let b = greedy_sumfree(&a);
            let mut t = Table::new(&["set_size", "greedy_size", "subset"]);
            t.push(row![a.len(), b.len(), join(&b)]);
            Ok(Report::new(t))
        }
        Command::EmbedFreiman {
            set_file,
            trials,
            modulus,
        } => {
            let a = parse_integer_set(&read_text(set_file)?)?;
            if a.is_empty() {
                return Err(Failure::config("set is empty"));
            }
            let cfg = EmbedConfig {
                modulus: *modulus,
                ..EmbedConfig::default()
            };
            let mut t = Table::new(&[
                "set_size",
                "modulus",
                "embedded",
                "subset_size",
                "trial",
                "multiplier",
                "offset",
                "prime",
                "subset",
                "images",
            ]);
            let n = modulus.unwrap_or_else(|| default_modulus(&a));
            match ruzsa_embed(&a, *trials, seed, &cfg)? {
                EmbedOutcome::Embedded(r) => {
                    t.push(row![
                        a.len(),
                        r.modulus,
                        true,
                        r.subset.len(),
                        r.trial,
                        r.multiplier,
                        r.offset,
                        r.prime,
                        join(r.subset.iter()),
                        join(&r.images)
                    ]);
                    Ok(Report::new(t))
                }
                EmbedOutcome::Exhausted { trials, best_size } => {
                    t.push(row![
                        a.len(),
                        n,
                        false,
                        best_size,
                        trials,
                        None::<u64>,
                        None::<u64>,
                        None::<u64>,
                        "",
                        ""
                    ]);
                    let mut r = Report::new(t);
                    r.success = false;
                    Ok(r)
                }
            }
        }
        Command::Pipeline { x_file, y_file, k } => {
            let x = parse_integer_set(&read_text(x_file)?)?;
            let y = parse_integer_set(&read_text(y_file)?)?;
            let found = pipeline_extract(&x, &y, *k, &SumfreeConfig::default())?;
            let mut t = Table::new(&["x_size", "y_size", "k", "found", "subset"]);
            t.push(row![
                x.len(),
                y.len(),
                *k,
                found.is_some(),
                found.as_ref().map(|s| join(s.iter()))
            ]);
            let text = found.as_ref().map(format_integer_set);
            let mut r = Report::new(t);
            if let Some(text) = text {
                r = r.note(format!("subset:\n{}", text.trim_end()));
            }
            Ok(r)
        }
        Command::Verify { scope } => {
            let verdicts = verify::run_scope(scope)?;
            let mut r = Report::new(verify::summary_table(&verdicts));
            r.success = verdicts.iter().all(|v| v.pass);
            r.notes = verdicts.iter().map(verify::Verdict::line).collect();
            Ok(r)
        }
    }
}

fn nonempty(set: Vec<usize>) -> CliResult<Vec<usize>> {
    if set.is_empty() {
        Err(Failure::config(
            "random set came out empty; raise --density",
        ))
    } else {
        Ok(set)
    }
}

fn element_label(spec: &GroupSpec, g: &FiniteAbelianGroup, x: usize) -> String {
    match spec {
        GroupSpec::Interval(_) => x.to_string(),
        GroupSpec::Moduli(_) => format!(
            "({})",
            g.coords_of(x)
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

fn describe_witness(kind: &WitnessKind) -> String {
    match kind {
        WitnessKind::Rectangle(r) => format!(
            "dense rectangle rows {} cols {}{}",
            join(&r.rows),
            join(&r.cols),
            if r.heuristic { " (heuristic)" } else { "" }
        ),
        WitnessKind::LowDegree(rows) => format!("low-degree rows {}", join(rows)),
    }
}
