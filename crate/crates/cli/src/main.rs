//! `umbral` -- exact polynomial family tables and identity verification.
//!
//! Three commands:
//!
//! - `compute`: one family member as exact rational coefficients, or its
//!   value at a rational point.
//! - `table`: members `0..=n_max` as JSON records or CSV rows.
//! - `verify`: run identity checks over a parameter grid, streaming one JSON
//!   line per check.
//!
//! Rationals are read and written in the canonical "p/q" form (plain "p"
//! when the denominator is 1); decimal literals are rejected. Output is
//! bit-identical across runs for identical arguments.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing identity,
//! 2 on usage errors (unknown family or identity, invalid parameters such as
//! `--nu 0` or `--lambda 1`, negative or out-of-range `--n`).

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use umbral_core::families::{self, FamilyId};
use umbral_core::identity::{verify_grid, GridSpec, IdentityId};
use umbral_core::rational::parse_rational;
use umbral_core::{Polynomial, Rational};

#[derive(Parser)]
#[command(
    name = "umbral",
    version,
    about = "Exact Appell/Sheffer polynomial families and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one family member (ascending coefficients), or its value at a point
    Compute {
        /// One of: hb, hermite, poly_bernoulli, bernoulli_order_r,
        /// frobenius_euler, bernoulli_number, stirling2
        family: String,
        /// Degree (row index for stirling2)
        #[arg(long)]
        n: u32,
        /// Hermite order (rational, nonzero); used by hb and hermite
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Poly-Bernoulli index (column index m for stirling2)
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
        /// Order of the Bernoulli / Frobenius-Euler family
        #[arg(long)]
        r: Option<u32>,
        /// Frobenius-Euler parameter (rational, != 1)
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Evaluate at this rational instead of printing coefficients
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Print family members 0..=n_max as JSON records or CSV rows
    Table {
        family: String,
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check identities over a parameter grid; one JSON line per check
    Verify {
        /// Identity tags, or "all"
        #[arg(default_value = "all")]
        ids: Vec<String>,
        #[arg(long, value_enum, default_value_t = Profile::Quick)]
        profile: Profile,
        /// Check a single level n instead of the profile's range
        #[arg(long)]
        n: Option<u32>,
        /// Use a single nu instead of the profile's values
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Use a single k instead of the profile's values
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
        /// Use a single r instead of the profile's values
        #[arg(long)]
        r: Option<u32>,
        /// Use a single lambda instead of the profile's values
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Testing aid: corrupt one coefficient of this identity's right side
        #[arg(long = "inject-fault", value_name = "IDENTITY")]
        inject_fault: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

type UsageResult<T> = Result<T, String>;

fn run(command: Command) -> UsageResult<ExitCode> {
    match command {
        Command::Compute {
            family,
            n,
            nu,
            k,
            r,
            lambda,
            at,
        } => {
            let family: FamilyId = family.parse()?;
            let at = at.map(|s| parse_rat_arg(&s, "--at")).transpose()?;
            cmd_compute(family, n as usize, &RawParams { nu, k, r, lambda }, at)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            family,
            n_max,
            nu,
            k,
            r,
            lambda,
            format,
        } => {
            let family: FamilyId = family.parse()?;
            cmd_table(
                family,
                n_max as usize,
                &RawParams { nu, k, r, lambda },
                format,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            ids,
            profile,
            n,
            nu,
            k,
            r,
            lambda,
            inject_fault,
        } => cmd_verify(
            &ids,
            profile,
            VerifyOverrides {
                n: n.map(|v| v as usize),
                nu,
                k,
                r,
                lambda,
            },
            inject_fault,
        ),
    }
}

/// Raw parameter flags as given on the command line.
struct RawParams {
    nu: Option<String>,
    k: Option<i32>,
    r: Option<u32>,
    lambda: Option<String>,
}

impl RawParams {
    fn nu(&self) -> UsageResult<Rational> {
        let s = self.nu.as_deref().ok_or("this family requires --nu")?;
        let nu = parse_rat_arg(s, "--nu")?;
        if nu == Rational::from_integer(0.into()) {
            return Err("--nu must be nonzero".into());
        }
        Ok(nu)
    }

    fn k(&self) -> UsageResult<i32> {
        self.k.ok_or_else(|| "this family requires --k".into())
    }

    fn r(&self) -> UsageResult<u32> {
        self.r.ok_or_else(|| "this family requires --r".into())
    }

    fn lambda(&self) -> UsageResult<Rational> {
        let s = self
            .lambda
            .as_deref()
            .ok_or("this family requires --lambda")?;
        let lambda = parse_rat_arg(s, "--lambda")?;
        if lambda == Rational::from_integer(1.into()) {
            return Err("--lambda must not equal 1".into());
        }
        Ok(lambda)
    }
}

fn parse_rat_arg(s: &str, flag: &str) -> UsageResult<Rational> {
    parse_rational(s).map_err(|e| format!("{flag}: {e}"))
}

/// The member polynomial and the JSON params object echoed in records.
fn family_member(
    family: FamilyId,
    n: usize,
    raw: &RawParams,
) -> UsageResult<(Polynomial, serde_json::Value)> {
    match family {
        FamilyId::HbMixed => {
            let nu = raw.nu()?;
            let k = raw.k()?;
            let poly = families::hb(n, &nu, k).map_err(|e| e.to_string())?;
            Ok((poly, serde_json::json!({"nu": nu.to_string(), "k": k})))
        }
        FamilyId::Hermite => {
            let nu = raw.nu()?;
            let poly = families::hermite(n, &nu).map_err(|e| e.to_string())?;
            Ok((poly, serde_json::json!({"nu": nu.to_string()})))
        }
        FamilyId::PolyBernoulli => {
            let k = raw.k()?;
            Ok((families::poly_bernoulli(n, k), serde_json::json!({"k": k})))
        }
        FamilyId::BernoulliOrderR => {
            let r = raw.r()?;
            Ok((families::bernoulli_poly(n, r), serde_json::json!({"r": r})))
        }
        FamilyId::FrobeniusEuler => {
            let r = raw.r()?;
            let lambda = raw.lambda()?;
            let poly = families::frobenius_euler(n, r, &lambda).map_err(|e| e.to_string())?;
            Ok((
                poly,
                serde_json::json!({"r": r, "lambda": lambda.to_string()}),
            ))
        }
        FamilyId::BernoulliNumber | FamilyId::Stirling2 => {
            unreachable!("scalar families are handled by their callers")
        }
    }
}

fn cmd_compute(
    family: FamilyId,
    n: usize,
    raw: &RawParams,
    at: Option<Rational>,
) -> UsageResult<()> {
    let payload = match family {
        FamilyId::BernoulliNumber => {
            if at.is_some() {
                return Err("--at is not meaningful for bernoulli_number".into());
            }
            serde_json::json!(families::bernoulli_number(n).to_string())
        }
        FamilyId::Stirling2 => {
            if at.is_some() {
                return Err("--at is not meaningful for stirling2".into());
            }
            let m = raw.k.ok_or("stirling2 requires --k (the column index m)")?;
            serde_json::json!(families::stirling2(n as i64, m as i64).to_string())
        }
        _ => {
            let (poly, _) = family_member(family, n, raw)?;
            match at {
                Some(x) => serde_json::json!(poly.eval(&x).to_string()),
                None => serde_json::json!(poly.coeff_strings()),
            }
        }
    };
    println!("{payload}");
    Ok(())
}

fn cmd_table(family: FamilyId, n_max: usize, raw: &RawParams, format: Format) -> UsageResult<()> {
    // Row payloads: (n, cells). Cells are canonical rational strings.
    let mut params = serde_json::json!({});
    let rows: Vec<Vec<String>> = match family {
        FamilyId::BernoulliNumber => families::bernoulli_numbers(n_max)
            .iter()
            .map(|b| vec![b.to_string()])
            .collect(),
        FamilyId::Stirling2 => families::stirling2_table(n_max)
            .iter()
            .map(|row| row.iter().skip(1).map(|v| v.to_string()).collect())
            .collect(),
        _ => {
            let polys: Vec<Polynomial> = (0..=n_max)
                .map(|n| {
                    let (poly, p) = family_member(family, n, raw)?;
                    params = p;
                    Ok(poly)
                })
                .collect::<UsageResult<_>>()?;
            polys.iter().map(|p| p.coeff_strings()).collect()
        }
    };

    match format {
        Format::Json => {
            let records: Vec<serde_json::Value> = rows
                .iter()
                .enumerate()
                .map(|(n, cells)| match family {
                    FamilyId::BernoulliNumber => serde_json::json!({
                        "family": family.as_str(), "n": n, "params": params,
                        "value": cells[0],
                    }),
                    FamilyId::Stirling2 => serde_json::json!({
                        "family": family.as_str(), "n": n, "params": params,
                        "values": cells,
                    }),
                    _ => serde_json::json!({
                        "family": family.as_str(), "n": n, "params": params,
                        "coefficients": cells,
                    }),
                })
                .collect();
            println!("{}", serde_json::Value::Array(records));
        }
        Format::Csv => {
            // Rectangular layout; cells beyond a row's own length are
            // genuinely zero for every family here.
            let header: Vec<String> = match family {
                FamilyId::BernoulliNumber => vec!["value".into()],
                FamilyId::Stirling2 => (1..=n_max).map(|m| format!("m{m}")).collect(),
                _ => (0..=n_max).map(|c| format!("c{c}")).collect(),
            };
            println!("n,{}", header.join(","));
            let width = header.len();
            for (n, cells) in rows.iter().enumerate() {
                let mut line = Vec::with_capacity(width + 1);
                line.push(n.to_string());
                for i in 0..width {
                    line.push(cells.get(i).cloned().unwrap_or_else(|| "0".into()));
                }
                println!("{}", line.join(","));
            }
        }
    }
    Ok(())
}

struct VerifyOverrides {
    n: Option<usize>,
    nu: Option<String>,
    k: Option<i32>,
    r: Option<u32>,
    lambda: Option<String>,
}

fn cmd_verify(
    ids: &[String],
    profile: Profile,
    overrides: VerifyOverrides,
    inject_fault: Option<String>,
) -> UsageResult<ExitCode> {
    let ids = parse_ids(ids)?;
    let fault = inject_fault.map(|s| s.parse::<IdentityId>()).transpose()?;

    let mut grid = match profile {
        Profile::Quick => GridSpec::quick(),
        Profile::Full => GridSpec::full(),
    };
    if let Some(n) = overrides.n {
        for id in &ids {
            if n < id.n_floor() {
                return Err(format!(
                    "identity {id} is stated for n >= {}, got --n {n}",
                    id.n_floor()
                ));
            }
        }
    }
    if let Some(nu) = &overrides.nu {
        let nu = parse_rat_arg(nu, "--nu")?;
        if nu == Rational::from_integer(0.into()) {
            return Err("--nu must be nonzero".into());
        }
        grid.nu_values = vec![nu];
    }
    if let Some(k) = overrides.k {
        grid.k_values = vec![k];
    }
    if let Some(r) = overrides.r {
        grid.r_values = vec![r];
    }
    if let Some(lambda) = &overrides.lambda {
        let lambda = parse_rat_arg(lambda, "--lambda")?;
        if lambda == Rational::from_integer(1.into()) {
            return Err("--lambda must not equal 1".into());
        }
        grid.lambda_values = vec![lambda];
    }

    // With an explicit --n, restrict every identity to exactly that level.
    let reports = if let Some(n) = overrides.n {
        grid.n_max = n;
        let reports = verify_grid(&ids, &grid, fault).map_err(|e| e.to_string())?;
        reports.into_iter().filter(|r| r.n == n).collect()
    } else {
        verify_grid(&ids, &grid, fault).map_err(|e| e.to_string())?
    };

    let mut failed = 0usize;
    for report in &reports {
        println!("{}", report.to_json_line());
        if !report.equal {
            failed += 1;
        }
    }
    eprintln!(
        "verified {} checks: {} passed, {} failed",
        reports.len(),
        reports.len() - failed,
        failed
    );
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_ids(tokens: &[String]) -> UsageResult<Vec<IdentityId>> {
    let mut out: Vec<IdentityId> = Vec::new();
    for token in tokens {
        if token == "all" {
            for id in IdentityId::ALL {
                if !out.contains(&id) {
                    out.push(id);
                }
            }
        } else {
            let id: IdentityId = token.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    Ok(out)
}
