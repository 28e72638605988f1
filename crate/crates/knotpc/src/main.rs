use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use knotpc::diagrams::{
    four_t_relators, four_t_relators_unguarded, wheel, ChordDiagram, JacobiDiagram,
};
use knotpc::error::{Error, Result};
use knotpc::ranks::{build_system, build_system_unguarded, theta_quotient, RelatorKind};
use knotpc::seifert::{family_theta, verify_family, SeifertMatrix};
use knotpc::series::IntSeries;

/// Exact computation of Conway-polynomial primitive coefficients and the
/// mod-2 Hamiltonian-cycle weight system on chord and Jacobi diagrams.
///
/// Exit codes: 0 success, 1 validation error (bad input or guard), 2
/// verification failure (a checked mathematical identity does not hold).
#[derive(Parser)]
#[command(name = "knotpc", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SeriesOp {
    /// The discrete exponential, mapping x·Z[[x]] to 1 + x·Z[[x]].
    Exp,
    /// The discrete logarithm, its inverse.
    Log,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the discrete exponential or logarithm to an integer series.
    Series {
        #[arg(value_enum)]
        op: SeriesOp,
        /// Comma-separated coefficients "c0,c1,c2,..."; missing high
        /// coefficients are zero.
        #[arg(long)]
        coeffs: String,
        /// Truncation order (inclusive).
        #[arg(long)]
        order: usize,
    },
    /// Conway polynomial (and optionally primitive coefficients) of a
    /// Seifert matrix file.
    Conway {
        /// Matrix file: `#` comments, then g, then g rows of g integers.
        #[arg(long)]
        matrix: PathBuf,
        /// Also print pc_2 .. pc_{2K}.
        #[arg(long, value_name = "K")]
        pc: Option<usize>,
        /// Compute even if det(theta - theta^T) != 1.
        #[arg(long)]
        force: bool,
    },
    /// The built-in wheel-knot family: Seifert matrix, Conway polynomial,
    /// closed-form checks.
    Family {
        /// Family index (the wheel has n spokes, the matrix is 2n x 2n).
        #[arg(long)]
        n: usize,
        /// Check the determinant against the closed form and the expected
        /// coefficient facts; mismatches exit with code 2.
        #[arg(long)]
        verify: bool,
        /// Also print pc_2 .. pc_{2K}.
        #[arg(long, value_name = "K")]
        pc: Option<usize>,
    },
    /// Hamiltonian-cycle weight of a chord diagram.
    Ham {
        /// Chord word such as "1 2 1 2".
        #[arg(long)]
        diagram: String,
        /// Also print the full unoriented Hamiltonian cycle count.
        #[arg(long)]
        count: bool,
    },
    /// Check that the Hamiltonian weight vanishes on every four-term relator
    /// of the given degree.
    Check4t {
        #[arg(long)]
        degree: usize,
        /// Lift the enumeration degree guard.
        #[arg(long)]
        unsafe_degree: bool,
    },
    /// STU-reduce a wheel and evaluate the Hamiltonian weight.
    Wheel {
        /// Number of spokes (at least 2).
        #[arg(long)]
        degree: usize,
        /// Attaching permutation as comma-separated images of 0..n-1,
        /// e.g. "2,0,1". Defaults to the identity.
        #[arg(long)]
        perm: Option<String>,
    },
    /// Validate a Jacobi diagram file; optionally STU-reduce it or list its
    /// insulated vertices.
    Jacobi {
        /// Diagram file: "legs m" then "edge a b" lines with endpoints
        /// p0..p{m-1} and v0...
        #[arg(long)]
        file: PathBuf,
        /// STU-reduce and evaluate the Hamiltonian weight.
        #[arg(long)]
        eval: bool,
        /// List insulated vertices.
        #[arg(long)]
        iv: bool,
    },
    /// Rank and quotient dimension of a degree-n relator system over GF(2).
    Rank {
        #[arg(long)]
        degree: usize,
        /// Comma-separated subset of 4T,sep,iv,2iv.
        #[arg(long)]
        relators: String,
        /// Also list the basis diagrams.
        #[arg(long)]
        verbose: bool,
        /// Lift the degree guards.
        #[arg(long)]
        unsafe_degree: bool,
    },
    /// Dimension and surviving generator of the theta-with-hairs quotient
    /// (odd n).
    Theta {
        #[arg(long)]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Error::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Series { op, coeffs, order } => {
            let input = IntSeries::parse(&coeffs, order)?;
            println!("order = {order}");
            match op {
                SeriesOp::Exp => println!("exp_z = {}", input.exp_z()?),
                SeriesOp::Log => println!("log_z = {}", input.log_z()?),
            }
            Ok(())
        }
        Command::Conway { matrix, pc, force } => {
            let text = std::fs::read_to_string(&matrix).map_err(|e| {
                Error::Validation(format!("cannot read {}: {e}", matrix.display()))
            })?;
            let m = SeifertMatrix::parse(&text)?;
            print_conway_lines(&m, pc, force)
        }
        Command::Family { n, verify, pc } => {
            if n == 0 {
                return Err(Error::Validation("family index must be at least 1".into()));
            }
            let theta = family_theta(n);
            if verify {
                for line in verify_family(n)? {
                    println!("{line}");
                }
            } else {
                println!("n = {n}");
                println!("A(s) = {}", theta.alexander(false)?);
                println!("C(z) = {}", theta.conway(false)?);
            }
            if let Some(k) = pc {
                print_pc_lines(&theta, k, false)?;
            }
            Ok(())
        }
        Command::Ham { diagram, count } => {
            let d = ChordDiagram::parse(&diagram)?.canonicalize();
            if d.degree() > 24 {
                return Err(Error::Validation(format!(
                    "degree {} exceeds the Hamiltonian counting cap of 24",
                    d.degree()
                )));
            }
            println!("diagram = {d}");
            println!("degree = {}", d.degree());
            if count {
                println!("count = {}", d.intersection_graph().hamiltonian_count());
            }
            println!("ham = {}", u8::from(d.ham()));
            Ok(())
        }
        Command::Check4t {
            degree,
            unsafe_degree,
        } => {
            let relators = if unsafe_degree {
                four_t_relators_unguarded(degree)
            } else {
                four_t_relators(degree)?
            };
            let odd = relators
                .iter()
                .filter(|r| r.iter().filter(|d| d.ham()).count() % 2 == 1)
                .count();
            println!("degree = {degree}");
            println!("relators = {}", relators.len());
            println!("odd_relators = {odd}");
            println!("ham_vanishes = {}", odd == 0);
            if odd > 0 {
                return Err(Error::Verification(format!(
                    "{odd} of {} four-term relators have odd Hamiltonian weight at degree {degree}",
                    relators.len()
                )));
            }
            Ok(())
        }
        Command::Wheel { degree, perm } => {
            let sigma = match perm {
                None => (0..degree).collect::<Vec<_>>(),
                Some(text) => text
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Validation(format!("bad permutation entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let w = wheel(degree, &sigma)?;
            let (sum, terms) = w.stu_reduce_counted();
            println!("degree = {degree}");
            println!(
                "perm = {}",
                sigma
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            println!("expansion_terms = {terms}");
            println!("surviving_terms = {}", sum.len());
            println!("ham = {}", u8::from(sum.ham()));
            Ok(())
        }
        Command::Jacobi { file, eval, iv } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", file.display())))?;
            let d = JacobiDiagram::parse(&text)?;
            println!("legs = {}", d.legs());
            println!("internal = {}", d.internal_count());
            println!("degree = {}", d.degree());
            if iv {
                let insulated = d.insulated_vertices();
                if insulated.is_empty() {
                    println!("insulated = none");
                } else {
                    println!(
                        "insulated = {}",
                        insulated
                            .iter()
                            .map(|v| format!("v{v}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            }
            if eval {
                let (sum, terms) = d.stu_reduce_counted();
                println!("expansion_terms = {terms}");
                println!("surviving_terms = {}", sum.len());
                println!("ham = {}", u8::from(sum.ham()));
            }
            Ok(())
        }
        Command::Rank {
            degree,
            relators,
            verbose,
            unsafe_degree,
        } => {
            let kinds = relators
                .split(',')
                .map(|t| t.trim().parse::<RelatorKind>())
                .collect::<Result<Vec<_>>>()?;
            let sys = if unsafe_degree {
                build_system_unguarded(degree, &kinds)?
            } else {
                build_system(degree, &kinds)?
            };
            let (rank, dim) = sys.gf2_rank();
            println!(
                "basis={} relators={} rank={} quotient_dim={}",
                sys.basis().len(),
                sys.relator_count(),
                rank,
                dim
            );
            if verbose {
                for (i, d) in sys.basis().iter().enumerate() {
                    println!("basis[{i}] = {d}");
                }
            }
            Ok(())
        }
        Command::Theta { n } => {
            let q = theta_quotient(n)?;
            println!("n = {n}");
            println!("dimension = {}", q.dimension);
            match q.generator {
                Some((a, b, c)) => println!("generator = ({a},{b},{c})"),
                None => println!("generator = none"),
            }
            Ok(())
        }
    }
}

fn print_conway_lines(m: &SeifertMatrix, pc: Option<usize>, force: bool) -> Result<()> {
    println!("size = {}", m.size());
    println!("C(z) = {}", m.conway(force)?);
    if let Some(k) = pc {
        print_pc_lines(m, k, force)?;
    }
    Ok(())
}

fn print_pc_lines(m: &SeifertMatrix, k: usize, force: bool) -> Result<()> {
    let pcs = m.pc(k, force)?;
    for (i, value) in pcs.values().iter().enumerate() {
        println!("pc_{} = {value}", 2 * (i + 1));
    }
    Ok(())
}
