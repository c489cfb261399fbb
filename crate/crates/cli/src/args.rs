use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ual",
    version,
    about = "Universal algebras, characters, gradings and actions of Leibniz algebras"
)]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// An algebra file, or a builtin name: abelian(n), aff2, sl2, gl(m), heisenberg.
#[derive(Debug, Args)]
pub struct AlgebraArg {
    /// Algebra h (file or builtin name).
    pub algebra: String,

    /// Work over F_p; file constants are reduced mod p.
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Leibniz identity [x,[y,z]] = [[x,y],z] - [[x,z],y] and antisymmetry.
    Check(AlgebraArg),

    /// Universal polynomials P_(a,i,j) generating the ideal of A(h, g).
    Upoly {
        #[command(flatten)]
        h: AlgebraArg,
        /// Source algebra g (defaults to h).
        #[arg(long)]
        g: Option<String>,
        /// List all n*|I|^2 polynomials, zeros and antisymmetric mates included.
        #[arg(long)]
        all: bool,
    },

    /// Presentation of A(h, g): universal polynomials and reduced Groebner basis.
    Present {
        #[command(flatten)]
        h: AlgebraArg,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, value_enum, default_value = "degrevlex")]
        order: OrderArg,
    },

    /// Certificates for the bialgebra structure of A(h) and the coaction of h.
    BialgebraCheck(AlgebraArg),

    /// Characters of A(h, g) over F_p, i.e. Leibniz maps g -> h.
    Chars {
        #[command(flatten)]
        h: AlgebraArg,
        #[arg(long)]
        g: Option<String>,
    },

    /// Automorphisms of h over F_p as invertible characters of A(h).
    Autos {
        #[command(flatten)]
        h: AlgebraArg,
        /// List all endomorphisms instead.
        #[arg(long)]
        endomorphisms: bool,
    },

    /// m-dimensional representations of a Lie algebra over F_p via A(gl(m), g).
    Reps {
        #[command(flatten)]
        g: AlgebraArg,
        #[arg(long)]
        dim: usize,
    },

    /// Diagonal G-gradings of h and the bialgebra maps A(h) -> k[G] they induce.
    Gradings {
        #[command(flatten)]
        h: AlgebraArg,
        /// Finite abelian group such as Z2 or Z2xZ4 ("1" is trivial).
        #[arg(long)]
        group: String,
    },

    /// Isomorphism classes of G-gradings (diagonal ones and their conjugates) over F_p.
    ClassifyGradings {
        #[command(flatten)]
        h: AlgebraArg,
        #[arg(long)]
        group: String,
    },

    /// Actions of G by automorphisms over F_p and their maps A(h) -> k[G]*.
    Actions {
        #[command(flatten)]
        h: AlgebraArg,
        #[arg(long)]
        group: String,
    },

    /// Current algebra h (x) k[t]/(t^m).
    Current {
        #[command(flatten)]
        h: AlgebraArg,
        #[arg(long)]
        truncated: usize,
    },
}
