//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rankin", version, about = "Numerical and exact checks for automorphic objects on GL(n)")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Key-value file of default flag values (`key = value` per line, `#` comments).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Iwasawa coordinates and height of a real matrix.
    Iwasawa(IwasawaArgs),
    /// Parabolic cosets: representatives, the signature test and height contraction.
    #[command(subcommand)]
    Coset(CosetCommand),
    /// The completed maximal parabolic Eisenstein series on GL(2n).
    Eisenstein(EisensteinArgs),
    /// Whittaker functions on GL(2) and GL(3).
    Whittaker(WhittakerArgs),
    /// Rankin-Selberg L-values and cusp form documents.
    #[command(subcommand)]
    Lfun(LfunCommand),
    /// The Maass-Selberg relation on the diagonal and its epsilon-limit.
    MaassSelberg(MaassSelbergArgs),
    /// Prime density scans and the Mellin cutoff.
    #[command(subcommand)]
    Sieve(SieveCommand),
    /// The Mellin test function and its inverse transform.
    Psi(PsiArgs),
    /// Width of the zero-free region from a lower bound and a derivative bound.
    Zfr(ZfrArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct IwasawaArgs {
    /// Rows separated by `;`, entries by `,`: "2,1;0.5,3".
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
    /// Also reconstruct the matrix and report the residual.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// Off-diagonal coordinates x_{ij}, row by row.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Diagonal ratios y_1, .., y_{k-1}.
    #[arg(long)]
    pub y: Option<String>,
    /// Number of random points when no coordinates are given.
    #[arg(long, default_value_t = 1)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum CosetCommand {
    /// Enumerate coset representatives (JSON gives arrays of integer rows).
    Reps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Use the maximal parabolic P_{n-m,m} instead of the mirabolic-type P~_{n,m}.
        #[arg(long)]
        maximal: bool,
    },
    /// Compare the minor-signature test with exact parabolic membership.
    Compare {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        m: usize,
    },
    /// Run the signature test against the oracle on a random pool.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 50)]
        pool: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check h(gamma z) <= h(z) over the P_{n,n} representatives of GL(2n).
    Height {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[command(flatten)]
        point: PointArgs,
    },
}

#[derive(Args, Debug)]
pub struct EisensteinArgs {
    /// Half the rank: the group is GL(2n).
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Report |E*(z, s) - E*(z', 1 - s)| / |E*(z, s)| with z' the transpose-inverse.
    #[arg(long)]
    pub check_fe: bool,
    /// Also compare with the coset sum truncated at this entry bound (needs Re s > 1).
    #[arg(long)]
    pub coset_bound: Option<i64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[command(flatten)]
    pub point: PointArgs,
}

#[derive(Args, Debug)]
pub struct WhittakerArgs {
    /// 2 or 3.
    #[arg(long)]
    pub n: usize,
    /// Spectral parameters nu_1, .., nu_{n-1} as complex numbers.
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long)]
    pub y: String,
    /// Report the completed function W* instead of W.
    #[arg(long)]
    pub completed: bool,
    /// Cross-check against quadrature of the defining integral.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
}

/// Where the cusp form data comes from. With no source flag a random isobaric form is used.
#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    /// A cusp form JSON document.
    #[arg(long)]
    pub form: Option<PathBuf>,
    /// Isobaric form with these imaginary Langlands shifts (must sum to zero).
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: Option<String>,
    /// Sato-Tate Satake data instead of isobaric.
    #[arg(long)]
    pub sato_tate: bool,
    /// Degree of a generated form.
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 1)]
    pub form_seed: u64,
    /// Spread of generated isobaric shifts.
    #[arg(long, default_value_t = 1.0)]
    pub spread: f64,
    #[arg(long, default_value_t = 1.0)]
    pub petersson: f64,
}

#[derive(Subcommand, Debug)]
pub enum LfunCommand {
    /// L(1 + 2int, f x f~) by the approximate functional equation.
    Value {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Balancing parameter (default (|t| + 1)^{n^2/2}).
        #[arg(long)]
        x: Option<f64>,
        /// Also evaluate at 2X and report the relative difference.
        #[arg(long)]
        check_x: bool,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Write a cusp form JSON document with Satake data up to a prime bound (always JSON).
    Export {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 1000)]
        primes: u64,
    },
}

#[derive(Args, Debug)]
pub struct MaassSelbergArgs {
    #[command(flatten)]
    pub form: FormArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Truncation parameter A.
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
}

#[derive(Subcommand, Debug)]
pub enum SieveCommand {
    /// Fraction of primes in [N, 2N) with |eta_{it}(p)| >= delta.
    EtaDensity {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Weighted density of primes in [N, 2N] with |lambda(p)| >= 1/100.
    GoodPrimes {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Weighted density of primes that are good for f and for eta at once.
    Overlap {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long = "N")]
        big_n: u64,
    },
    /// Contour integral of x^w / w^2 against its closed form.
    Cutoff {
        #[arg(long, default_value = "0.1,0.5,1,2,10,100")]
        x: String,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
pub struct PsiArgs {
    #[arg(long)]
    pub r: f64,
    /// Real parts alpha_j; their count is the degree n.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value_t = 4)]
    pub order: u32,
    #[arg(long)]
    pub strip: Option<f64>,
    /// Points w at which to evaluate the transform.
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Points y at which to evaluate the inverse transform.
    #[arg(long)]
    pub y: Option<String>,
    /// Check normalisation, zero orders, strip decay and positivity.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct ZfrArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
    /// Constant in |L(1 + it)| >= lower / log^3(|t| + 2).
    #[arg(long)]
    pub lower: f64,
    /// Constant in |L'(1 + it)| <= deriv log^2(|t| + 2).
    #[arg(long)]
    pub deriv: f64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// all, matrix, coset, special, theta, lfun or sieve.
    #[arg(default_value = "all")]
    pub suite: String,
}
