//! Command-line surface for the torsion-unit verifier.
//!
//! Exit codes: 0 = verified, 1 = violation or counterexample found,
//! 2 = usage or parameter error. The code depends on the mathematical
//! conclusion only, never on formatting options.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zunits::*;

const THEOREM_CAP: u64 = 199;
const LEMMA_CAP: u64 = 1001;
// Table dumps materialize every entry; desk scale only.
const TABLES_CAP: u64 = 13;

#[derive(Parser)]
#[command(name = "zunits", version, about = "Verifies that Z PSL(2, p^3) has no Heisenberg torsion unit group of order p^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline for one prime and emit a certificate
    Theorem {
        #[arg(long)]
        p: u64,
        /// Cross-check with the literal brute-force oracle (p <= 7 only)
        #[arg(long)]
        oracle: bool,
        /// Also write the JSON certificate to this file
        #[arg(long, value_name = "FILE")]
        json: Option<std::path::PathBuf>,
        /// Lift the desk-scale parameter cap
        #[arg(long)]
        unsafe_no_cap: bool,
    },
    /// Check the F_2 rank statement for the all-ones-minus-identity matrix
    Lemma {
        #[arg(long)]
        m: u64,
        /// Lift the desk-scale parameter cap
        #[arg(long)]
        unsafe_no_cap: bool,
    },
    /// Verify the Gaussian-sum square and the residue-sum product identities
    Gauss {
        #[arg(long)]
        p: u64,
        /// Lift the desk-scale parameter cap
        #[arg(long)]
        unsafe_no_cap: bool,
    },
    /// Dump the character data: the PSL(2, p^3) fragment and the full table of H
    Tables {
        #[arg(long)]
        p: u64,
        /// Lift the desk-scale parameter cap
        #[arg(long)]
        unsafe_no_cap: bool,
    },
    /// Luthar-Passi multiplicities for trivial units of PSL(2, Q) of the given order
    Lp {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        order: u64,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn check_cap(value: u64, cap: u64, what: &str, lifted: bool) -> Option<String> {
    if value > cap && !lifted {
        Some(format!("{what} = {value} exceeds the desk-scale cap {cap}; pass --unsafe-no-cap to override"))
    } else {
        None
    }
}

fn cube_root(q: u64) -> Option<u64> {
    let p = (q as f64).cbrt().round() as u64;
    (p.saturating_sub(1)..=p + 1).find(|&c| c * c * c == q)
}

fn run_theorem(p: u64, oracle: bool, json: Option<std::path::PathBuf>, no_cap: bool) -> ExitCode {
    if let Some(e) = check_cap(p, THEOREM_CAP, "p", no_cap) {
        return usage_error(&e);
    }
    if oracle && !matches!(p, 3 | 5 | 7) {
        return usage_error("--oracle is only available for p in {3, 5, 7}");
    }
    let cert = match verify_theorem(p) {
        Ok(c) => c,
        Err(Error::InvalidParameter(m)) => return usage_error(&m),
        Err(e) => {
            eprintln!("violation: {e}");
            return ExitCode::from(1);
        }
    };
    println!("p = {}, epsilon = {}", cert.p, cert.epsilon);
    for step in &cert.steps {
        println!("  {:<36} {:?}", step.name, step.status);
    }
    println!("conclusion: {:?}", cert.conclusion);
    if oracle {
        match brute_force_oracle(p) {
            Ok(c) => println!("oracle: {:?}", c.conclusion),
            Err(e) => {
                eprintln!("oracle disagreement: {e}");
                return ExitCode::from(1);
            }
        }
    }
    if let Some(path) = json {
        let body = match cert.to_json_string() {
            Ok(b) => b,
            Err(e) => return usage_error(&format!("serialization failed: {e}")),
        };
        if let Err(e) = std::fs::write(&path, &body) {
            return usage_error(&format!("cannot write {}: {e}", path.display()));
        }
        println!("certificate written to {}", path.display());
    }
    match cert.conclusion {
        Conclusion::NoHeisenbergSubgroup | Conclusion::LiteratureCase { .. } => ExitCode::SUCCESS,
        Conclusion::Inconclusive { .. } => ExitCode::from(1),
    }
}

fn run_lemma(m: u64, no_cap: bool) -> ExitCode {
    if m < 1 {
        return usage_error("m must be at least 1");
    }
    if let Some(e) = check_cap(m, LEMMA_CAP, "m", no_cap) {
        return usage_error(&e);
    }
    let m = m as usize;
    let mat = lemma_matrix(m);
    let rank = f2_rank(&mat);
    let kernel = f2_nullspace(&mat);
    println!("m = {m}: rank = {rank}, kernel dimension = {}", kernel.len());
    if m % 2 == 1 && rank == m - 1 && kernel == vec![vec![1u8; m]] {
        println!("verified: rank m - 1, kernel spanned by (1, ..., 1)");
        ExitCode::SUCCESS
    } else if m % 2 == 1 {
        eprintln!("violation: rank statement fails for odd m = {m}");
        ExitCode::from(1)
    } else {
        eprintln!("counterexample: m = {m} is even, rank = {rank} (full), kernel trivial");
        ExitCode::from(1)
    }
}

fn run_gauss(p: u64, no_cap: bool) -> ExitCode {
    if !is_odd_prime(p) {
        return usage_error(&format!("p = {p} is not an odd prime"));
    }
    if let Some(e) = check_cap(p, THEOREM_CAP, "p", no_cap) {
        return usage_error(&e);
    }
    let rd = residue_sets(p).expect("odd prime");
    let g = gauss_sum(p).expect("odd prime");
    let square = g.try_mul(&g).expect("same field");
    let square_ok = square.to_rational() == Some(rat(rd.epsilon() as i64 * p as i64));
    println!("p = {p}, epsilon = {}", rd.epsilon());
    println!("tau = {g}");
    println!("tau^2 = {square}");
    match product_identities(p) {
        Ok((same, cross)) if square_ok => {
            println!("S_Q^2 + S_N^2 = {same}");
            println!("2 S_Q S_N = {cross}");
            println!("verified");
            ExitCode::SUCCESS
        }
        _ => {
            eprintln!("violation: residue identities fail at p = {p}");
            ExitCode::from(1)
        }
    }
}

fn run_tables(p: u64, no_cap: bool) -> ExitCode {
    if !is_odd_prime(p) {
        return usage_error(&format!("p = {p} is not an odd prime"));
    }
    if let Some(e) = check_cap(p, TABLES_CAP, "p", no_cap) {
        return usage_error(&e);
    }
    let frag = psl2_fragment(p).expect("odd prime");
    println!("PSL(2, {}^3): |G| = {}", p, frag.group_order());
    for (label, class) in [("1", PslClass::One), ("g", PslClass::G), ("h", PslClass::H)] {
        println!("  eta({label})  = {}", frag.eta(class));
        println!("  eta'({label}) = {}", frag.eta_prime(class));
    }
    let table = char_table_heisenberg(p).expect("odd prime");
    println!();
    println!("{}", table.to_text());
    ExitCode::SUCCESS
}

fn run_lp(q: u64, order: u64) -> ExitCode {
    let Some(p) = cube_root(q) else {
        return usage_error(&format!("q = {q} is not a cube of an odd prime"));
    };
    if !is_odd_prime(p) {
        return usage_error(&format!("q = {q} is not a cube of an odd prime"));
    }
    if order != p {
        return usage_error(&format!(
            "only units of order p = {p} are supported for q = {q} (exact arithmetic is limited to prime conductors)"
        ));
    }
    let rd = residue_sets(p).expect("odd prime");
    let degree = rat_frac(q as i64 + rd.epsilon() as i64, 2);
    let mut failed = false;
    for (label, branch) in [("g", Branch::G), ("h", Branch::H)] {
        let value = unit_char_value(p, &PAVector::new(branch, 0)).expect("odd prime");
        let mut char_on_powers = BTreeMap::new();
        for k in 1..p {
            char_on_powers.insert(k, value.galois(k).expect("unit"));
        }
        char_on_powers.insert(p, CycNum::from_rational(p, degree.clone()).expect("odd prime"));
        let mus: Vec<Rational> = (0..p)
            .map(|l| lp_multiplicity(p, &char_on_powers, l).expect("complete input"))
            .collect();
        let ok = mus.iter().all(is_nonnegative_integer);
        failed |= !ok;
        let joined: Vec<String> = mus.iter().map(|m| m.to_string()).collect();
        println!("eta on class {label}: mu = [{}]{}", joined.join(", "), if ok { "" } else { "  <- negative" });
    }
    if failed {
        eprintln!("violation: some multiplicity is not a nonnegative integer");
        ExitCode::from(1)
    } else {
        println!("verified: all multiplicities are nonnegative integers");
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Theorem { p, oracle, json, unsafe_no_cap } => run_theorem(p, oracle, json, unsafe_no_cap),
        Command::Lemma { m, unsafe_no_cap } => run_lemma(m, unsafe_no_cap),
        Command::Gauss { p, unsafe_no_cap } => run_gauss(p, unsafe_no_cap),
        Command::Tables { p, unsafe_no_cap } => run_tables(p, unsafe_no_cap),
        Command::Lp { q, order } => run_lp(q, order),
    }
}
