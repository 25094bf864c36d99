//! Experiment settings: command-line flags merged over a flat key=value
//! config file, flags winning.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// One experiment's fully merged settings. Every field is optional here;
/// each command validates what it actually needs.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub command: Option<String>,
    pub algorithm: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub eps: Option<String>,
    pub iterations: Option<usize>,
    pub convention: Option<String>,
    pub relation_file: Option<PathBuf>,
    pub truth_table: Option<PathBuf>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub bound: Option<f64>,
    pub value: Option<usize>,
    pub distance: bool,
}

impl Settings {
    /// Overlays `self` (flags) on `base` (config file): any field set on
    /// `self` wins.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            command: self.command.or(base.command),
            algorithm: self.algorithm.or(base.algorithm),
            family: self.family.or(base.family),
            n: self.n.or(base.n),
            eps: self.eps.or(base.eps),
            iterations: self.iterations.or(base.iterations),
            convention: self.convention.or(base.convention),
            relation_file: self.relation_file.or(base.relation_file),
            truth_table: self.truth_table.or(base.truth_table),
            tol: self.tol.or(base.tol),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            bound: self.bound.or(base.bound),
            value: self.value.or(base.value),
            distance: self.distance || base.distance,
        }
    }
}

/// Parses a flat `key = value` config file. Blank lines and `#` comments
/// are skipped; keys match the long flag names.
pub fn parse_config(path: &Path) -> Result<Settings> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut s = Settings::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("{}:{}: expected key=value", path.display(), idx + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let ctx = || format!("{}:{}: bad value for {key}", path.display(), idx + 1);
        match key {
            "command" => s.command = Some(value.into()),
            "algorithm" => s.algorithm = Some(value.into()),
            "family" => s.family = Some(value.into()),
            "n" => s.n = Some(value.parse().with_context(ctx)?),
            "eps" => s.eps = Some(value.into()),
            "iterations" => s.iterations = Some(value.parse().with_context(ctx)?),
            "convention" => s.convention = Some(value.into()),
            "relation-file" => s.relation_file = Some(value.into()),
            "truth-table" => s.truth_table = Some(value.into()),
            "tol" => s.tol = Some(value.parse().with_context(ctx)?),
            "seed" => s.seed = Some(value.parse().with_context(ctx)?),
            "out" => s.out = Some(value.into()),
            "format" => s.format = Some(value.into()),
            "bound" => s.bound = Some(value.parse().with_context(ctx)?),
            "value" => s.value = Some(value.parse().with_context(ctx)?),
            "distance" => s.distance = value.parse().with_context(ctx)?,
            _ => bail!("{}:{}: unknown key {key}", path.display(), idx + 1),
        }
    }
    Ok(s)
}

/// Parses a gap fraction: `p/q`, a decimal like `0.5`, or an integer.
/// Returns the reduced numerator and denominator.
pub fn parse_eps(text: &str) -> Result<(u64, u64)> {
    let (num, den): (u64, u64) = if let Some((a, b)) = text.split_once('/') {
        (
            a.trim().parse().context("bad numerator")?,
            b.trim().parse().context("bad denominator")?,
        )
    } else if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if digits == 0 || digits > 9 {
            bail!("decimal gap must have 1 to 9 fractional digits");
        }
        let whole: u64 = if int.is_empty() {
            0
        } else {
            int.parse().context("bad integer part")?
        };
        let frac: u64 = frac.parse().context("bad fractional part")?;
        let den = 10u64.pow(digits);
        (whole * den + frac, den)
    } else {
        (text.trim().parse().context("bad gap")?, 1)
    };
    if den == 0 {
        bail!("gap denominator must be nonzero");
    }
    let g = gcd(num.max(1), den);
    Ok((num / g, den / g))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
