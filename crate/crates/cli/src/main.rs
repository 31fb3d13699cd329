//! `dpc` — rates for Gaussian channels with noisily-known interference.
//!
//! Six subcommands: `capacity`, `alpha`, `exponent`, `cognitive`, `sweep`,
//! and `verify`.  Scalar commands print an aligned table by default and
//! switch to JSON (`--json`) or `key,value` CSV (`--csv`); `sweep` emits a
//! CSV data stream (or a JSON table).  Identical flags produce byte-identical
//! output, including the seeded Monte Carlo in `verify`.
//!
//! Rate-valued *inputs* (`--R`, `--mc-tol`) are always in nats; `--units`
//! only converts outputs.  Exit codes: 0 success, 1 usage error,
//! 2 verification failure, 3 numeric/domain error.

mod output;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;

use dirtypaper::cognitive::{CognitiveNetwork, SweepVariable};
use dirtypaper::dpc::{capacity_rx_only, capacity_tx_only, DirtyPaperChannel};
use dirtypaper::exponent::{log_error_bound, DecodeSetting};
use dirtypaper::oracle::{
    determinant_capacity, exponent_by_maximization, grid_argmax_alpha, mc_mutual_info,
    scheme_index::{M1, M2, U, Y},
    SampleSpec,
};
use dirtypaper::{Rate, Unit};
use output::{Format, Record, SweepRowOut, SweepTable};

#[derive(Parser)]
#[command(
    name = "dpc",
    version,
    about = "Capacity, error exponents, and achievable rates for Gaussian channels with noisily known interference"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output units for rate-valued results (inputs are always nats)
    #[arg(long, global = true, default_value = "nats")]
    units: Unit,

    /// Emit JSON instead of the default format
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV instead of the default format
    #[arg(long, global = true)]
    csv: bool,

    /// RNG seed (consumed by `verify`)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Monte-Carlo sample count (consumed by `verify`)
    #[arg(long, global = true, default_value_t = 1_000_000)]
    samples: u64,
}

/// Channel parameters shared by `capacity` and `alpha`.
#[derive(Args)]
struct ChannelFlags {
    /// Transmit power P
    #[arg(long = "P")]
    p: f64,
    /// Interference power Q
    #[arg(long = "Q")]
    q: f64,
    /// Channel noise variance N0
    #[arg(long = "N0")]
    n0: f64,
    /// Transmitter-side observation noise N1 ("inf" = no observation)
    #[arg(long = "N1")]
    n1: f64,
    /// Receiver-side observation noise N2 ("inf" = no observation)
    #[arg(long = "N2")]
    n2: f64,
}

impl ChannelFlags {
    fn channel(&self) -> Result<DirtyPaperChannel, CliError> {
        Ok(DirtyPaperChannel::new(
            self.p, self.q, self.n0, self.n1, self.n2,
        )?)
    }

    fn echo(&self, rec: &mut Record) {
        rec.param("P", self.p)
            .param("Q", self.q)
            .param("N0", self.n0)
            .param("N1", self.n1)
            .param("N2", self.n2);
    }
}

/// Network parameters shared by `cognitive` and `sweep`.  The defaults are
/// the reference scenario: strong primary, moderate secondary, unit noises
/// and direct gain.
#[derive(Args)]
struct NetworkFlags {
    /// Primary transmit power
    #[arg(long = "PA", default_value_t = 10.0)]
    pa: f64,
    /// Secondary transmit power
    #[arg(long = "PC", default_value_t = 2.0)]
    pc: f64,
    /// Noise variance at the secondary transmitter
    #[arg(long = "NC", default_value_t = 1.0)]
    nc: f64,
    /// Noise variance at the secondary receiver
    #[arg(long = "ND", default_value_t = 1.0)]
    nd: f64,
    /// Gain from the primary to the secondary transmitter
    #[arg(long = "hAC")]
    h_ac: f64,
    /// Gain from the primary to the secondary receiver
    #[arg(long = "hAD")]
    h_ad: f64,
    /// Secondary direct-link gain
    #[arg(long = "hCD", default_value_t = 1.0)]
    h_cd: f64,
    /// Primary rate in nats
    #[arg(long = "R")]
    r: f64,
    /// Block length
    #[arg(long = "n", default_value_t = 100)]
    n: u32,
}

impl NetworkFlags {
    fn network(&self) -> Result<CognitiveNetwork, CliError> {
        let rate = Rate::from_nats(self.r)?;
        Ok(CognitiveNetwork::new(
            self.pa, self.pc, self.nc, self.nd, self.h_ac, self.h_ad, self.h_cd, rate, self.n,
        )?)
    }

    fn echo(&self, params: &mut dyn FnMut(&str, f64)) {
        params("PA", self.pa);
        params("PC", self.pc);
        params("NC", self.nc);
        params("ND", self.nd);
        params("hAC", self.h_ac);
        params("hAD", self.h_ad);
        params("hCD", self.h_cd);
        params("R", self.r);
        params("n", self.n as f64);
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Capacity with noisy interference observations at either side
    Capacity {
        #[command(flatten)]
        ch: ChannelFlags,
    },
    /// The optimal cancellation coefficient and the rate it achieves
    Alpha {
        #[command(flatten)]
        ch: ChannelFlags,
        /// Also evaluate the rate at this specific coefficient
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Random-coding error exponent of a Gaussian decode at a given rate
    Exponent {
        /// Decode signal-to-noise ratio
        #[arg(long = "A1")]
        a1: f64,
        /// Code rate in nats
        #[arg(long = "R")]
        r: f64,
        /// Also bound ln P_e for a block of this many symbols
        #[arg(long)]
        symbols: Option<u64>,
    },
    /// Classify a primary/secondary scenario and compute its achievable rate
    Cognitive {
        #[command(flatten)]
        net: NetworkFlags,
    },
    /// Evaluate the achievable rate over a grid of one parameter
    Sweep {
        #[command(flatten)]
        net: NetworkFlags,
        /// Which parameter to vary: m, hAD, hAC, or n
        #[arg(long)]
        var: String,
        /// First grid value
        #[arg(long)]
        from: f64,
        /// Last grid value
        #[arg(long)]
        to: f64,
        /// Number of grid points
        #[arg(long)]
        steps: u64,
    },
    /// Cross-check the closed forms against the independent oracles
    Verify {
        /// Random instances per suite
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Override the Monte-Carlo tolerance in nats
        /// (default 5e-3 scaled by sqrt(1e6/samples))
        #[arg(long = "mc-tol")]
        mc_tol: Option<f64>,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
    Numeric(String),
}

impl From<dirtypaper::Error> for CliError {
    fn from(e: dirtypaper::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let units = cli.units;
    let result = match cli.cmd {
        Cmd::Capacity { ch } => cmd_capacity(&ch, units, format),
        Cmd::Alpha { ch, alpha } => cmd_alpha(&ch, alpha, units, format),
        Cmd::Exponent { a1, r, symbols } => cmd_exponent(a1, r, symbols, units, format),
        Cmd::Cognitive { net } => cmd_cognitive(&net, units, format),
        Cmd::Sweep {
            net,
            var,
            from,
            to,
            steps,
        } => cmd_sweep(&net, &var, from, to, steps, units, format),
        Cmd::Verify { trials, mc_tol } => {
            cmd_verify(trials, cli.seed, cli.samples, mc_tol, units, format)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

/// Rate-valued output in the requested units.
fn conv(units: Unit, nats: f64) -> f64 {
    match units {
        Unit::Nats => nats,
        Unit::Bits => nats / std::f64::consts::LN_2,
    }
}

fn cmd_capacity(ch: &ChannelFlags, units: Unit, format: Format) -> Result<(), CliError> {
    let channel = ch.channel()?;
    let mut rec = Record::new("capacity", units);
    ch.echo(&mut rec);
    rec.result("capacity", channel.capacity().value_in(units));
    // undefined corners are omitted rather than faked: mu needs Q > 0, the
    // coefficient needs a transmitter observation
    if let Ok(mu) = channel.residual_fraction() {
        rec.result("mu", mu);
    }
    if let Ok(alpha) = channel.optimal_alpha() {
        rec.result("alpha_star", alpha);
    }
    rec.result(
        "capacity_tx_only",
        capacity_tx_only(ch.p, ch.q, ch.n0, ch.n1)?.value_in(units),
    );
    rec.result(
        "capacity_rx_only",
        capacity_rx_only(ch.p, ch.q, ch.n0, ch.n2)?.value_in(units),
    );
    print!("{}", rec.render(format));
    Ok(())
}

fn cmd_alpha(
    ch: &ChannelFlags,
    alpha: Option<f64>,
    units: Unit,
    format: Format,
) -> Result<(), CliError> {
    let channel = ch.channel()?;
    let star = channel.optimal_alpha()?;
    let mut rec = Record::new("alpha", units);
    ch.echo(&mut rec);
    rec.result("alpha_star", star);
    rec.result(
        "rate_at_alpha_star",
        channel.rate_of_alpha(star)?.value_in(units),
    );
    rec.result("capacity", channel.capacity().value_in(units));
    if let Some(a) = alpha {
        rec.param("alpha", a);
        rec.result("rate_at_alpha", channel.rate_of_alpha(a)?.value_in(units));
    }
    print!("{}", rec.render(format));
    Ok(())
}

fn cmd_exponent(
    a1: f64,
    r: f64,
    symbols: Option<u64>,
    units: Unit,
    format: Format,
) -> Result<(), CliError> {
    let setting = DecodeSetting::new(a1, Rate::from_nats(r)?)?;
    let exponent = setting.random_coding_exponent();
    let mut rec = Record::new("exponent", units);
    rec.param("A1", a1).param("R", r);
    rec.result("exponent", conv(units, exponent));
    rec.result("capacity", setting.capacity().value_in(units));
    rec.result("critical_rate", setting.critical_rate().value_in(units));
    if let Some(n) = symbols {
        rec.param("symbols", n as f64);
        // a natural-log probability bound, not a rate: never unit-converted
        rec.result("ln_error_bound", log_error_bound(exponent, n)?);
    }
    print!("{}", rec.render(format));
    Ok(())
}

fn cmd_cognitive(net: &NetworkFlags, units: Unit, format: Format) -> Result<(), CliError> {
    let network = net.network()?;
    let outcome = network.achievable_rate();
    let mut rec = Record::new("cognitive", units);
    net.echo(&mut |k, v| {
        rec.param(k, v);
    });
    rec.result("rate", outcome.rate.value_in(units));
    rec.result("lower_bound", outcome.lower_bound.value_in(units));
    rec.result("upper_bound", outcome.upper_bound.value_in(units));
    if let Some(m) = outcome.m_opt {
        rec.result("m_opt", m as f64);
    }
    if let Some(mu) = outcome.mu_effective {
        rec.result("mu_effective", mu);
    }
    rec.label("case", outcome.case_id.token());
    print!("{}", rec.render(format));
    Ok(())
}

fn cmd_sweep(
    net: &NetworkFlags,
    var: &str,
    from: f64,
    to: f64,
    steps: u64,
    units: Unit,
    format: Format,
) -> Result<(), CliError> {
    let variable: SweepVariable = var
        .parse()
        .map_err(|e: dirtypaper::Error| CliError::Usage(e.to_string()))?;
    if !from.is_finite() || !to.is_finite() {
        return Err(CliError::Usage(format!(
            "--from and --to must be finite, got {from} and {to}"
        )));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if steps > 10_000_000 {
        return Err(CliError::Usage(format!(
            "--steps {steps} is above the 1e7 row limit"
        )));
    }
    let network = net.network()?;
    let grid: Vec<f64> = if steps == 1 {
        vec![from]
    } else {
        (0..steps)
            .map(|i| from + i as f64 * (to - from) / (steps - 1) as f64)
            .collect()
    };
    let rows = network.sweep(variable, &grid)?;

    let mut table = SweepTable::new(units);
    net.echo(&mut |k, v| {
        table.param(k, v);
    });
    table.param("from", from);
    table.param("to", to);
    table.param("steps", steps as f64);
    table.labels.insert("var".into(), variable.to_string());
    for row in rows {
        table.rows.push(match row.point {
            Ok(p) => SweepRowOut {
                value: row.value,
                case: Some(p.case_id.token().to_string()),
                rate: Some(p.rate.value_in(units)),
                m_opt: p.m_opt.map(|m| m as f64),
                mu: p.mu_effective,
                error: None,
            },
            Err(e) => SweepRowOut {
                value: row.value,
                case: None,
                rate: None,
                m_opt: None,
                mu: None,
                error: Some(e.to_string()),
            },
        });
    }
    print!("{}", table.render(format));
    Ok(())
}

/// The five reference channels the Monte-Carlo suite samples.
const MC_CHANNELS: [(f64, f64, f64, f64, f64); 5] = [
    (1.0, 1.0, 1.0, 1.0, 1.0),
    (5.0, 2.0, 1.0, 0.5, 3.0),
    (10.0, 20.0, 2.0, 4.0, 1.0),
    (0.5, 8.0, 1.5, 2.0, 2.0),
    (3.0, 0.7, 0.4, 1.5, 6.0),
];

struct Suite {
    worst: f64,
    tol: f64,
    at: String,
}

impl Suite {
    fn ok(&self) -> bool {
        self.worst < self.tol
    }
}

fn cmd_verify(
    trials: u64,
    seed: u64,
    samples: u64,
    mc_tol: Option<f64>,
    units: Unit,
    format: Format,
) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if samples < 100 {
        return Err(CliError::Usage(format!(
            "--samples must be at least 100, got {samples}"
        )));
    }
    let mc_tol = match mc_tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => {
            return Err(CliError::Usage(format!(
                "--mc-tol must be finite and > 0, got {t}"
            )))
        }
        // the documented 5e-3 at 1e6 samples, scaled with the 1/sqrt(n)
        // statistical error
        None => 5e-3 * (1e6 / samples as f64).sqrt(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // suite 1: closed capacity vs the determinant route
    let mut determinant = Suite {
        worst: 0.0,
        tol: 1e-9,
        at: String::new(),
    };
    for _ in 0..trials {
        let t = (
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
        );
        let ch = DirtyPaperChannel::new(t.0, t.1, t.2, t.3, t.4).unwrap();
        let diff = (ch.capacity().nats() - determinant_capacity(&ch)?.nats()).abs();
        if diff > determinant.worst {
            determinant.worst = diff;
            determinant.at = format!("{t:?}");
        }
    }

    // suite 2: closed coefficient vs grid search, and its rate vs capacity
    let mut alpha_grid = Suite {
        worst: 0.0,
        tol: 1e-4 + 1e-9,
        at: String::new(),
    };
    let mut alpha_rate = Suite {
        worst: 0.0,
        tol: 1e-10,
        at: String::new(),
    };
    for _ in 0..trials {
        let t = (
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
            rng.gen_range(0.1..100.0),
        );
        let ch = DirtyPaperChannel::new(t.0, t.1, t.2, t.3, t.4).unwrap();
        let star = ch.optimal_alpha()?;
        let grid = grid_argmax_alpha(&ch, -1.0, 1.0, 1e-4)?;
        let dg = (grid - star).abs();
        if dg > alpha_grid.worst {
            alpha_grid.worst = dg;
            alpha_grid.at = format!("{t:?}");
        }
        let dr = (ch.rate_of_alpha(star)?.nats() - ch.capacity().nats()).abs();
        if dr > alpha_rate.worst {
            alpha_rate.worst = dr;
            alpha_rate.at = format!("{t:?}");
        }
    }

    // suite 3: closed exponent vs the ρ-maximization
    let mut exponent = Suite {
        worst: 0.0,
        tol: 1e-6,
        at: String::new(),
    };
    for _ in 0..trials {
        let a1 = 10f64.powf(rng.gen_range(-2.0..2.0));
        let c = 0.5 * a1.ln_1p();
        let r = rng.gen_range(0.02..0.98) * c;
        let rate = Rate::from_nats(r).unwrap();
        let closed = DecodeSetting::new(a1, rate).unwrap().random_coding_exponent();
        let maximized = exponent_by_maximization(a1, rate)?;
        let diff = (closed - maximized).abs();
        if diff > exponent.worst {
            exponent.worst = diff;
            exponent.at = format!("(A1={a1}, R={r})");
        }
    }

    // suite 4: seeded Monte Carlo vs the closed capacity at the optimum
    let mut mc = Suite {
        worst: 0.0,
        tol: mc_tol,
        at: String::new(),
    };
    for (i, &(p, q, n0, n1, n2)) in MC_CHANNELS.iter().enumerate() {
        let ch = DirtyPaperChannel::new(p, q, n0, n1, n2).unwrap();
        let alpha = ch.optimal_alpha()?;
        let spec = SampleSpec::new(samples, seed.wrapping_add(i as u64))?;
        // same seed for both groups: one sample stream, one empirical
        // covariance, so the difference is the coding rate itself
        let direct = mc_mutual_info(&ch, alpha, &[U], &[Y, M2], spec)?.nats();
        let penalty = mc_mutual_info(&ch, alpha, &[U], &[M1], spec)?.nats();
        let diff = ((direct - penalty) - ch.capacity().nats()).abs();
        if diff > mc.worst {
            mc.worst = diff;
            mc.at = format!("({p}, {q}, {n0}, {n1}, {n2})");
        }
    }

    let suites = [
        ("determinant", &determinant),
        ("alpha_grid", &alpha_grid),
        ("alpha_rate", &alpha_rate),
        ("exponent", &exponent),
        ("mc", &mc),
    ];
    let mut rec = Record::new("verify", units);
    rec.param("trials", trials as f64)
        .param("seed", seed as f64)
        .param("samples", samples as f64);
    for (name, suite) in &suites {
        // deviations in α units are dimensionless; the rest are rates
        let is_rate = *name != "alpha_grid";
        let c = |v: f64| if is_rate { conv(units, v) } else { v };
        rec.result(&format!("{name}_worst"), c(suite.worst));
        rec.result(&format!("{name}_tol"), c(suite.tol));
        rec.label(name, if suite.ok() { "PASS" } else { "FAIL" });
    }
    let all_ok = suites.iter().all(|(_, s)| s.ok());
    rec.label("status", if all_ok { "PASS" } else { "FAIL" });
    print!("{}", rec.render(format));

    if all_ok {
        Ok(())
    } else {
        let detail = suites
            .iter()
            .filter(|(_, s)| !s.ok())
            .map(|(name, s)| format!("{name}: worst {:.6e} ≥ tol {:.6e} at {}", s.worst, s.tol, s.at))
            .collect::<Vec<_>>()
            .join("; ");
        Err(CliError::Verification(detail))
    }
}
