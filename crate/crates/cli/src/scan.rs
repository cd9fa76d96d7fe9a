//! Grid scans over (λ, τ).

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use selfsim_entropy::exactnum::{format_rational, parse_rational, Rational};
use selfsim_entropy::selfsim::{level_profile, IfsSpec, Parameter};

use crate::args::ScanMode;
use crate::CliError;

pub const CSV_HEADER: &str = "# ssentropy-scan v1";

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub lo: Rational,
    pub hi: Rational,
    pub steps: usize,
}

impl Axis {
    /// `steps` equally spaced points from lo to hi inclusive; one step gives lo.
    pub fn points(&self) -> Vec<Rational> {
        match self.steps {
            0 => vec![],
            1 => vec![self.lo.clone()],
            s => {
                let h = (&self.hi - &self.lo) / Rational::from_integer(BigInt::from(s - 1));
                (0..s).map(|i| &self.lo + &h * Rational::from_integer(BigInt::from(i))).collect()
            }
        }
    }
}

fn parse_axis(s: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(CliError::Usage(format!("axis {s:?} is not lo:hi:steps")));
    };
    let rat = |x: &str| parse_rational(x).map_err(|e| CliError::Usage(e.to_string()));
    let steps = steps
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("step count {steps:?} is not a nonnegative integer")))?;
    Ok(Axis { lo: rat(lo)?, hi: rat(hi)?, steps })
}

pub fn parse_grid(s: &str) -> Result<(Axis, Axis), CliError> {
    let Some((l, t)) = s.split_once(',') else {
        return Err(CliError::Usage("grid must be λ0:λ1:steps,τ0:τ1:steps".into()));
    };
    let (l, t) = (parse_axis(l)?, parse_axis(t)?);
    let unit = |q: &Rational| q.is_positive() && *q < Rational::one();
    if l.steps > 0 && !(unit(&l.lo) && unit(&l.hi)) {
        return Err(CliError::Usage("λ endpoints must lie in (0, 1)".into()));
    }
    Ok((l, t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub lambda: Rational,
    pub tau: Rational,
    pub rate_upper: f64,
    pub overlap_n: Option<usize>,
    pub dim_upper: f64,
}

fn cell(base: &IfsSpec, lambda: &Rational, tau: &Rational, n: usize) -> Result<Cell, CliError> {
    let spec = base.with_parameters(Parameter::Rational(lambda.clone()), Parameter::Rational(tau.clone()))?;
    let p = level_profile(&spec, n)?;
    let h = *p.entropies.last().unwrap();
    let dim_upper = (h / (n as f64 * spec.lambda().ln_inverse()?)).min(1.0);
    Ok(Cell {
        lambda: lambda.clone(),
        tau: tau.clone(),
        rate_upper: p.rate_upper(),
        overlap_n: p.overlap.map(|o| o.n),
        dim_upper,
    })
}

/// Row-major: λ outer, τ inner. Cells run in parallel and come back in order.
pub fn scan(base: &IfsSpec, lambdas: &Axis, taus: &Axis, n: usize) -> Result<Vec<Cell>, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let taus = taus.points();
    let points: Vec<(Rational, Rational)> = lambdas
        .points()
        .into_iter()
        .flat_map(|l| taus.iter().map(move |t| (l.clone(), t.clone())))
        .collect();
    points.par_iter().map(|(l, t)| cell(base, l, t, n)).collect()
}

pub fn to_csv(cells: &[Cell], mode: ScanMode) -> String {
    let cols: &[&str] = match mode {
        ScanMode::All => &["rate_upper", "overlap_n", "dim_upper"],
        ScanMode::EntropyRate => &["rate_upper"],
        ScanMode::OverlapFlag => &["overlap_n"],
        ScanMode::DimUpper => &["dim_upper"],
    };
    let mut out = format!("{CSV_HEADER}\nlambda,tau,{}\n", cols.join(","));
    for c in cells {
        let mut row = vec![format_rational(&c.lambda), format_rational(&c.tau)];
        for &col in cols {
            row.push(match col {
                "rate_upper" => c.rate_upper.to_string(),
                "overlap_n" => c.overlap_n.map_or(-1, |k| k as i64).to_string(),
                _ => c.dim_upper.to_string(),
            });
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use selfsim_entropy::exactnum::rational::{int, rat};

    #[test]
    fn axis_points() {
        let a = parse_axis("1/4:3/4:3").unwrap();
        assert_eq!(a.points(), vec![rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert_eq!(parse_axis("0.5:0.5:1").unwrap().points(), vec![rat(1, 2)]);
        assert!(parse_axis("0:1:0").unwrap().points().is_empty());
        assert!(parse_axis("0:1").is_err());
        assert!(parse_axis("0:1:-2").is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(parse_grid("1/2:1/2:1,2:2:1").is_ok());
        assert!(parse_grid("0:1/2:2,0:1:2").is_err());
        assert!(parse_grid("1/2:3/2:2,0:1:2").is_err());
        assert!(parse_grid("1/2:1/2:1").is_err());
        // an empty λ range is not checked against (0, 1)
        assert!(parse_grid("0:0:0,0:1:2").is_ok());
    }

    #[test]
    fn single_cell() {
        let base = IfsSpec::standard(Parameter::Rational(rat(1, 2)), Parameter::Rational(int(0))).unwrap();
        let (l, t) = parse_grid("1/2:1/2:1,2:2:1").unwrap();
        let cells = scan(&base, &l, &t, 2).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].overlap_n, Some(2));
        let csv = to_csv(&cells, ScanMode::OverlapFlag);
        assert_eq!(csv, "# ssentropy-scan v1\nlambda,tau,overlap_n\n1/2,2/1,2\n");
    }
}
