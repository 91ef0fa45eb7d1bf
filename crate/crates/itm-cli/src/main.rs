//! Command line frontend for the interval translation map experiments.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use itm_core::{
    check_acceleration, iterate, seed_states, split, z_step, DoubleRotation, Rat, Rat128, Scalar,
    SimplicialSystem, ZWinner,
};

use itm_cli::classify::{classify_crosschecked, classify_one};
use itm_cli::experiments::{boxdim, render_slice, sweep, BoxDimConfig, SweepConfig};

fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::parse_ratio(s).ok_or_else(|| format!("expected a fraction like 3/7, got {s:?}"))
}

fn parse_rat128(s: &str) -> Result<Rat128, String> {
    Rat128::parse_ratio(s).ok_or_else(|| format!("expected a fraction like 3/7, got {s:?}"))
}

#[derive(Parser)]
#[command(name = "itm", about = "Double rotation and interval translation map experiments")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InduceMode {
    /// One comparison step at a time on the five cell words.
    R,
    /// The accelerated step: one geometric first return.
    Z,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one parameter triple by running the induction.
    Classify {
        #[arg(long, value_parser = parse_rat)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat)]
        beta: Rat,
        #[arg(long, value_parser = parse_rat)]
        c: Rat,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        /// Also iterate the attractor geometrically and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Print an orbit of the circle map.
    Orbit {
        #[arg(long, value_parser = parse_rat)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat)]
        beta: Rat,
        #[arg(long, value_parser = parse_rat)]
        c: Rat,
        /// Starting point in [0, 1).
        #[arg(long, value_parser = parse_rat)]
        point: Rat,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Run the renormalization and print every step.
    Induce {
        #[arg(long, value_enum, default_value = "r")]
        mode: InduceMode,
        #[arg(long, value_parser = parse_rat)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat)]
        beta: Rat,
        #[arg(long, value_parser = parse_rat)]
        c: Rat,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
    },
    /// Check that the accelerated step equals a burst of comparison steps.
    AccelCheck {
        #[arg(long, value_parser = parse_rat)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat)]
        beta: Rat,
        #[arg(long, value_parser = parse_rat)]
        c: Rat,
        /// Maximum number of comparison steps to search.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
    },
    /// Export the symbolic step graph.
    Graph {
        /// Emit Graphviz dot instead of the text format.
        #[arg(long)]
        dot: bool,
        /// Restrict to vertices reachable from and reaching a cycle.
        #[arg(long)]
        pruned: bool,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the step graph and verify the nondegeneration conditions.
    Verify {
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Classify many random parameter triples and report survivor fractions.
    Sweep {
        #[arg(long, default_value_t = 10000)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Fractional bits of the sampled dyadic parameters.
        #[arg(long, default_value_t = 53)]
        precision: u32,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box counting estimate of the dimension of the undecided set.
    Boxdim {
        #[arg(long, default_value_t = 4)]
        k_min: u32,
        #[arg(long, default_value_t = 7)]
        k_max: u32,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a constant-c slice of the parameter square as a PGM image.
    Render {
        #[arg(long, value_parser = parse_rat128)]
        c: Rat128,
        #[arg(long, default_value_t = 256)]
        resolution: u32,
        #[arg(long, default_value_t = 200)]
        depth: usize,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(&path, bytes)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Classify { alpha, beta, c, depth, budget, cross_check } => {
            let dr = DoubleRotation::new(alpha.clone(), beta.clone(), c.clone())?;
            if cross_check {
                let r = classify_crosschecked(&dr, depth, budget);
                println!(
                    "alpha={alpha} beta={beta} c={c} outcome={} steps={}",
                    r.outcome.tag(),
                    r.outcome.steps(depth)
                );
                match r.attractor_steps {
                    Some(s) => println!("attractor=finite steps={s}"),
                    None => println!("attractor=undetermined"),
                }
                if r.contradiction {
                    println!("cross check: CONTRADICTION");
                    std::process::exit(1);
                }
                println!("cross check: consistent");
            } else {
                let o = classify_one(&dr, depth, budget);
                println!(
                    "alpha={alpha} beta={beta} c={c} outcome={} steps={}",
                    o.tag(),
                    o.steps(depth)
                );
            }
        }
        Cmd::Orbit { alpha, beta, c, point, steps } => {
            let dr = DoubleRotation::new(alpha, beta, c)?;
            let map = dr.to_piecewise();
            let mut x = point;
            for n in 0..=steps {
                println!("{n} {x}");
                x = map.evaluate(&x)?;
            }
        }
        Cmd::Induce { mode, alpha, beta, c, depth, budget } => {
            let dr = DoubleRotation::new(alpha, beta, c)?;
            let rep = dr.to_itm3(budget)?;
            println!(
                "normal form: pi0={:?} pi1={:?} lambda=[{}, {}, {}] t={}",
                rep.itm3.pi0(),
                rep.itm3.pi1(),
                rep.itm3.lambda()[0],
                rep.itm3.lambda()[1],
                rep.itm3.lambda()[2],
                rep.itm3.t()
            );
            match mode {
                InduceMode::R => {
                    let state = split(&rep.itm3)?;
                    println!("split: {}", state.serialize());
                    let path = iterate(&state, depth);
                    print!("{}", path.render());
                }
                InduceMode::Z => {
                    let z = z_step(&rep.itm3, budget)?;
                    let side = match z.winner {
                        ZWinner::Top => "top",
                        ZWinner::Bottom => "bottom",
                    };
                    println!("winner={side} flipped={}", z.flipped);
                    for b in z.map.branches() {
                        println!(
                            "branch [{}, {}) shift {}",
                            b.domain.lo(),
                            b.domain.hi(),
                            b.shift
                        );
                    }
                }
            }
        }
        Cmd::AccelCheck { alpha, beta, c, cap, budget } => {
            let dr = DoubleRotation::new(alpha, beta, c)?;
            let rep = dr.to_itm3(budget)?;
            let r = check_acceleration(&rep.itm3, cap, budget)?;
            println!(
                "steps={} tie={} flipped_match={}",
                r.steps, r.tie, r.flipped_match
            );
        }
        Cmd::Graph { dot, pruned, cap, out } => {
            let mut g = SimplicialSystem::build(&seed_states(), cap)?;
            if pruned {
                g = g.pruned();
            }
            let text = if dot { g.to_dot() } else { g.to_text() };
            emit(out, text.as_bytes())?;
        }
        Cmd::Verify { cap } => {
            let g = SimplicialSystem::build(&seed_states(), cap)?.pruned();
            let verdict = g.verify_strongly_nondegenerating();
            print!("{}", verdict.render());
            if !verdict.pass() {
                std::process::exit(1);
            }
        }
        Cmd::Sweep { samples, depth, seed, precision, budget, out } => {
            if precision == 0 || precision > 62 {
                bail!("precision must be between 1 and 62 bits");
            }
            let mut cfg = SweepConfig::new(samples, depth, seed);
            cfg.precision = precision;
            cfg.budget = budget;
            emit(out, sweep(&cfg).as_bytes())?;
        }
        Cmd::Boxdim { k_min, k_max, depth, budget, out } => {
            if k_min > k_max || k_max > 20 {
                bail!("need k_min <= k_max <= 20");
            }
            let cfg = BoxDimConfig { k_min, k_max, depth, budget };
            emit(out, boxdim(&cfg).as_bytes())?;
        }
        Cmd::Render { c, resolution, depth, budget, out } => {
            if resolution == 0 || resolution > 4096 {
                bail!("resolution must be between 1 and 4096");
            }
            emit(out, &render_slice(c, resolution, depth, budget))?;
        }
    }
    Ok(())
}
