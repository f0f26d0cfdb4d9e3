//! Argument parsing shared by the subcommands, and the CLI error type.

use std::fmt;

use affine_crystal::affine_weyl::parse_word;
use affine_crystal::coefficients::Method;
use affine_crystal::{AffinePermutation, Composition, Error, Partition};
use clap::{Args, ValueEnum};

/// A usage error exits with 2, a domain error with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// The element under study: a window, or a reduced word together with `n`.
#[derive(Debug, Clone, Args)]
pub struct ElementArgs {
    /// Window `[w(1),…,w(n)]`; bare lists are accepted when no entry is negative.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Reduced word as comma-separated residues, e.g. `3,4,1,2` (needs `--n`).
    #[arg(long)]
    pub word: Option<String>,
    /// Rank `n` for `--word`.
    #[arg(long)]
    pub n: Option<usize>,
}

impl ElementArgs {
    pub fn element(&self) -> CliResult<AffinePermutation> {
        match (&self.window, &self.word) {
            (Some(window), None) => {
                let w = parse_window(window)?;
                if let Some(n) = self.n {
                    if n != w.n() {
                        return Err(CliError::Usage(format!("--n {n} disagrees with a window of length {}", w.n())));
                    }
                }
                Ok(w)
            }
            (None, Some(word)) => {
                let n = self.n.ok_or_else(|| CliError::Usage("--word needs --n".into()))?;
                let letters = parse_word(word).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(AffinePermutation::from_reduced_word(&letters, n)?)
            }
            (Some(_), Some(_)) => Err(CliError::Usage("give exactly one of --window and --word".into())),
            (None, None) => Err(CliError::Usage("an element is required: --window or --word with --n".into())),
        }
    }
}

/// Engine selection on the command line; `oracle` is the alternating sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Crystal,
    Alternating,
    Pieri,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Crystal => Method::Crystal,
            MethodArg::Alternating | MethodArg::Oracle => Method::Alternating,
            MethodArg::Pieri => Method::Pieri,
        }
    }
}

pub fn parse_window(text: &str) -> CliResult<AffinePermutation> {
    text.parse::<AffinePermutation>().map_err(|e| match e {
        Error::Parse(msg) => CliError::Usage(format!("bad window {text:?}: {msg}")),
        other => CliError::Domain(other),
    })
}

pub fn parse_partition(text: &str) -> CliResult<Partition> {
    text.parse::<Partition>().map_err(|e| CliError::Usage(format!("bad partition {text:?}: {e}")))
}

pub fn parse_composition(text: &str) -> CliResult<Composition> {
    let body = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    parse_word(body).map(Composition).map_err(|e| CliError::Usage(format!("bad composition {text:?}: {e}")))
}

/// `i:e` pairs for `R_i^e`.
pub fn parse_rectangle(text: &str) -> CliResult<(usize, i64)> {
    let bad = || CliError::Usage(format!("bad rectangle {text:?}; expected i:e"));
    let (i, e) = text.split_once(':').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?))
}

/// Rejects elements longer than the enumeration bound.
pub fn check_degree(w: &AffinePermutation, bound: usize) -> CliResult<()> {
    if w.length() > bound {
        return Err(Error::DegreeTooLarge { degree: w.length(), bound }.into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_bracketed_or_bare() {
        assert_eq!(parse_window("[2,1,3]").unwrap(), parse_window("2,1,3").unwrap());
        assert_eq!(parse_window("[-1,3,4]").unwrap().window(), &[-1, 3, 4]);
        assert!(matches!(parse_window("[1,x]"), Err(CliError::Usage(_))));
        assert!(matches!(parse_window("[1,1]"), Err(CliError::Domain(Error::NotBijection(1, 1)))));
    }

    #[test]
    fn element_forms() {
        let word = ElementArgs { window: None, word: Some("3,4,1,2".into()), n: Some(5) };
        let window = ElementArgs { window: Some(word.element().unwrap().to_string()), word: None, n: None };
        assert_eq!(word.element().unwrap(), window.element().unwrap());
        let both = ElementArgs { window: Some("1,2".into()), word: Some("0".into()), n: Some(2) };
        assert!(matches!(both.element(), Err(CliError::Usage(_))));
        let no_rank = ElementArgs { window: None, word: Some("1".into()), n: None };
        assert!(matches!(no_rank.element(), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_parsers() {
        assert_eq!(parse_partition("(3,3,2)").unwrap(), Partition::new(vec![3, 3, 2]));
        assert_eq!(parse_partition("").unwrap(), Partition::empty());
        assert!(parse_partition("1,2").is_err());
        assert_eq!(parse_composition("0,2,1").unwrap(), Composition(vec![0, 2, 1]));
        assert_eq!(parse_rectangle("2:-1").unwrap(), (2, -1));
        assert!(parse_rectangle("2").is_err());
    }
}
