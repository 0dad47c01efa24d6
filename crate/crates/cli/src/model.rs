//! Model file parsing.
//!
//! A model file is line oriented: `key = value` settings plus operator
//! lines `theta<i> : c0, c1, ...` giving the polynomial coefficient of
//! the i-th theta power. `#` starts a comment. All numbers are exact
//! integers or fractions `p/q`.

use std::fmt;

use mirror_count_core::picard_fuchs::ThetaOperator;
use mirror_count_core::rat::{parse_rat, Rat};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    /// Grammar violation at a 1-based line and column.
    Parse { line: usize, col: usize, msg: String },
    /// Well-formed file with inconsistent contents.
    Semantic { msg: String },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Parse { line, col, msg } => {
                write!(f, "parse error at line {line}, column {col}: {msg}")
            }
            ModelError::Semantic { msg } => write!(f, "invalid model: {msg}"),
        }
    }
}

impl std::error::Error for ModelError {}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> ModelError {
    ModelError::Parse { line, col, msg: msg.into() }
}

fn semantic(msg: impl Into<String>) -> ModelError {
    ModelError::Semantic { msg: msg.into() }
}

/// Everything a prediction run needs, minus command-line overrides.
#[derive(Clone, Debug)]
pub struct ModelConfig {
    pub name: String,
    pub kappa: Rat,
    /// Series truncation order, when the file chose one.
    pub truncation: Option<usize>,
    pub max_degree: u32,
    /// Rational rescale rho of the canonical coordinate: counts are read
    /// off K(rho q) instead of K(q).
    pub q_rescale: Rat,
    pub operator: ThetaOperator,
}

pub const DEFAULT_TRUNCATION: usize = 20;
pub const DEFAULT_MAX_DEGREE: u32 = 10;

impl ModelConfig {
    /// Applies the precedence flag > file > environment > default and
    /// enforces the truncation margin.
    pub fn resolve_truncation(
        &self,
        flag: Option<usize>,
        env: Option<usize>,
    ) -> Result<usize, ModelError> {
        let t = flag
            .or(self.truncation)
            .or(env)
            .unwrap_or(DEFAULT_TRUNCATION);
        if t < self.max_degree as usize + 2 {
            return Err(semantic(format!(
                "truncation {t} is too small for degree {} (need at least {})",
                self.max_degree,
                self.max_degree as usize + 2
            )));
        }
        Ok(t)
    }

    /// The operator with the q-rescale folded in as a change of the
    /// series variable.
    pub fn scaled_operator(&self) -> ThetaOperator {
        if self.q_rescale.is_one() {
            self.operator.clone()
        } else {
            self.operator.scale_variable(&self.q_rescale)
        }
    }
}

pub fn parse_model(text: &str) -> Result<ModelConfig, ModelError> {
    let mut name: Option<String> = None;
    let mut kappa: Option<Rat> = None;
    let mut truncation: Option<usize> = None;
    let mut max_degree: Option<u32> = None;
    let mut q_rescale: Option<Rat> = None;
    let mut theta: [Option<Vec<Rat>>; 5] = [None, None, None, None, None];

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(eq) = line.find('=') {
            let key = line[..eq].trim();
            let value = line[eq + 1..].trim();
            let vcol = col_of(raw, value, eq + 2);
            match key {
                "name" => {
                    if value.is_empty() {
                        return Err(parse_err(lineno, vcol, "empty name"));
                    }
                    set_once(&mut name, value.to_string(), "name", lineno)?;
                }
                "kappa" => {
                    let v = parse_rat(value)
                        .ok_or_else(|| parse_err(lineno, vcol, format!("bad rational '{value}'")))?;
                    set_once(&mut kappa, v, "kappa", lineno)?;
                }
                "truncation" => {
                    let v: usize = value
                        .parse()
                        .map_err(|_| parse_err(lineno, vcol, format!("bad integer '{value}'")))?;
                    set_once(&mut truncation, v, "truncation", lineno)?;
                }
                "max_degree" => {
                    let v: u32 = value
                        .parse()
                        .map_err(|_| parse_err(lineno, vcol, format!("bad integer '{value}'")))?;
                    set_once(&mut max_degree, v, "max_degree", lineno)?;
                }
                "q_rescale" => {
                    let v = parse_rat(value)
                        .ok_or_else(|| parse_err(lineno, vcol, format!("bad rational '{value}'")))?;
                    set_once(&mut q_rescale, v, "q_rescale", lineno)?;
                }
                other => {
                    return Err(parse_err(
                        lineno,
                        col_of(raw, key, 1),
                        format!("unknown key '{other}'"),
                    ));
                }
            }
        } else if let Some(colon) = line.find(':') {
            let head = line[..colon].trim();
            let Some(rest) = head.strip_prefix("theta") else {
                return Err(parse_err(lineno, 1, format!("unrecognized line '{}'", line.trim())));
            };
            let Ok(i) = rest.parse::<usize>() else {
                return Err(parse_err(lineno, 1, format!("bad operator line '{head}'")));
            };
            if i > 4 {
                return Err(parse_err(
                    lineno,
                    1,
                    format!("theta{i}: only orders up to theta4 are supported"),
                ));
            }
            let mut coeffs = Vec::new();
            for piece in line[colon + 1..].split(',') {
                let piece_trim = piece.trim();
                if piece_trim.is_empty() {
                    return Err(parse_err(lineno, col_of(raw, piece, colon + 2), "empty coefficient"));
                }
                let v = parse_rat(piece_trim).ok_or_else(|| {
                    parse_err(
                        lineno,
                        col_of(raw, piece_trim, colon + 2),
                        format!("bad rational '{piece_trim}'"),
                    )
                })?;
                coeffs.push(v);
            }
            if theta[i].is_some() {
                return Err(parse_err(lineno, 1, format!("duplicate theta{i} line")));
            }
            theta[i] = Some(coeffs);
        } else {
            return Err(parse_err(lineno, 1, format!("unrecognized line '{}'", line.trim())));
        }
    }

    let kappa = kappa.ok_or_else(|| semantic("kappa is required"))?;
    if kappa.is_zero() {
        return Err(semantic("kappa must be nonzero"));
    }
    if theta.iter().all(Option::is_none) {
        return Err(semantic("no operator lines (theta0..theta4)"));
    }
    let polys: Vec<Vec<Rat>> = theta.into_iter().map(Option::unwrap_or_default).collect();
    let operator = ThetaOperator::new(polys.try_into().expect("five entries"))
        .map_err(|e| semantic(e.to_string()))?;
    let max_degree = max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let config = ModelConfig {
        name: name.unwrap_or_else(|| "model".to_string()),
        kappa,
        truncation,
        max_degree,
        q_rescale: q_rescale.unwrap_or_else(Rat::one),
        operator,
    };
    if let Some(t) = config.truncation {
        if t < max_degree as usize + 2 {
            return Err(semantic(format!(
                "truncation {t} is too small for max_degree {max_degree} (need at least {})",
                max_degree as usize + 2
            )));
        }
    }
    Ok(config)
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<(), ModelError> {
    if slot.is_some() {
        return Err(parse_err(line, 1, format!("duplicate key '{key}'")));
    }
    *slot = Some(value);
    Ok(())
}

/// 1-based column of a substring inside the raw line; falls back to a
/// given position when the substring is empty or not found.
fn col_of(raw: &str, needle: &str, fallback: usize) -> usize {
    if needle.is_empty() {
        return fallback;
    }
    match raw.find(needle) {
        Some(byte) => raw[..byte].chars().count() + 1,
        None => fallback,
    }
}
