//! Turning command-line arguments into core objects.

use std::fs;
use std::path::Path;

use vfrep_core::cartan::parse_int_matrix;
use vfrep_core::catalog::named_gcm;
use vfrep_core::scalar::{parse_scalar, Scalar, ScalarMatrix};
use vfrep_core::{
    build_cartan_data, build_representation, normalized_solution_matrices, Gcm, Representation,
    RepresentationJson, SolutionMatrix,
};

use crate::args::{MatrixArgs, RepArgs};
use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn load_gcm(m: &MatrixArgs) -> Result<Gcm, CliError> {
    let entries = match (&m.r#type, &m.matrix, &m.file) {
        (Some(name), None, None) => {
            return named_gcm(name)
                .ok_or_else(|| CliError::Input(format!("unknown Cartan type `{name}`")))
        }
        (None, Some(text), None) => parse_int_matrix(text)?,
        (None, None, Some(path)) => parse_int_matrix(&read_file(path)?)?,
        (None, None, None) => {
            return Err(CliError::Input(
                "give a Cartan matrix with --type, --matrix or --file".into(),
            ))
        }
        _ => {
            return Err(CliError::Input(
                "--type, --matrix and --file are mutually exclusive".into(),
            ))
        }
    };
    Ok(Gcm::new(entries)?)
}

/// Comma-separated list, e.g. `1,-2,3`.
pub fn parse_list<T, E: std::fmt::Display>(
    text: &str,
    what: &str,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            parse(s.trim()).map_err(|e| CliError::Input(format!("bad {what} entry `{s}`: {e}")))
        })
        .collect()
}

fn expect_len<T>(v: Vec<T>, r: usize, what: &str) -> Result<Vec<T>, CliError> {
    if v.len() == r {
        Ok(v)
    } else {
        Err(CliError::Input(format!(
            "{what} needs {r} entries, got {}",
            v.len()
        )))
    }
}

pub fn parse_diag(text: Option<&str>, r: usize) -> Result<Option<Vec<Scalar>>, CliError> {
    text.map(|t| expect_len(parse_list(t, "--diag", parse_scalar)?, r, "--diag"))
        .transpose()
}

pub fn parse_n(text: Option<&str>, r: usize) -> Result<Vec<i64>, CliError> {
    match text {
        Some(t) => {
            let n = expect_len(parse_list(t, "--n", str::parse::<i64>)?, r, "--n")?;
            if let Some(i) = n.iter().position(|&k| k == 0) {
                return Err(CliError::Input(format!("n_{} is zero", i + 1)));
            }
            Ok(n)
        }
        None => Ok(vec![1; r]),
    }
}

/// Rational matrix as JSON (`[["1","-1/2"],[0,1]]`) or as rows separated by
/// `;` or newlines.
pub fn parse_rational_matrix(text: &str) -> Result<ScalarMatrix, CliError> {
    let t = text.trim();
    let bad = |msg: String| CliError::Input(format!("bad --a matrix: {msg}"));
    if t.starts_with('[') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| bad(e.to_string()))?;
        let rows = v
            .as_array()
            .ok_or_else(|| bad("expected an array of rows".into()))?;
        return rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("expected an array of rows".into()))?
                    .iter()
                    .map(|x| {
                        let s = match x {
                            serde_json::Value::String(s) => s.clone(),
                            serde_json::Value::Number(n) => n.to_string(),
                            other => return Err(bad(format!("entry {other} is not a number"))),
                        };
                        parse_scalar(&s).map_err(|e| bad(e.to_string()))
                    })
                    .collect()
            })
            .collect();
    }
    t.split(['\n', ';'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| parse_scalar(s).map_err(|e| bad(e.to_string())))
                .collect()
        })
        .collect()
}

/// The solution matrix selected by `--sm`/`--a`, scaled by `--diag`.
pub fn load_solution(g: &Gcm, rep: &RepArgs) -> Result<SolutionMatrix, CliError> {
    let base = match &rep.a {
        Some(text) => {
            if rep.sm.is_some() {
                return Err(CliError::Input(
                    "--sm and --a are mutually exclusive".into(),
                ));
            }
            SolutionMatrix::validate(g, parse_rational_matrix(text)?)?
        }
        None => {
            let sms = normalized_solution_matrices(g)?;
            if sms.is_empty() {
                return Err(CliError::Input(format!(
                    "{} has no solution matrices",
                    describe(g)
                )));
            }
            let k = rep.sm.unwrap_or(0);
            sms.get(k).cloned().ok_or_else(|| {
                CliError::Input(format!(
                    "--sm {k} out of range: {} solution matrices",
                    sms.len()
                ))
            })?
        }
    };
    match parse_diag(rep.diag.as_deref(), g.rank())? {
        Some(d) => Ok(base.scale(&d)?),
        None => Ok(base),
    }
}

pub fn load_representation(m: &MatrixArgs, rep: &RepArgs) -> Result<Representation, CliError> {
    let g = load_gcm(m)?;
    let cd = build_cartan_data(&g)?;
    let a = load_solution(&g, rep)?;
    let n = parse_n(rep.n.as_deref(), g.rank())?;
    Ok(build_representation(&cd, &a, &n)?)
}

pub fn representation_from_file(path: &Path) -> Result<Representation, CliError> {
    let j: RepresentationJson = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Representation::from_json(&j)?)
}

pub fn describe(g: &Gcm) -> String {
    match g.classify() {
        Ok(t) => t.kind.to_string(),
        Err(_) => "the matrix".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vfrep_core::scalar::{int, ratio};

    #[test]
    fn rational_matrices() {
        let want = vec![vec![int(1), ratio(-1, 2)], vec![int(0), int(3)]];
        assert_eq!(
            parse_rational_matrix(r#"[["1","-1/2"],[0,3]]"#).unwrap(),
            want
        );
        assert_eq!(parse_rational_matrix("1 -1/2; 0 3").unwrap(), want);
        assert!(parse_rational_matrix("[[1, true]]").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_n(Some("1,-2"), 2).unwrap(), vec![1, -2]);
        assert!(parse_n(Some("1,0"), 2).is_err());
        assert!(parse_n(Some("1"), 2).is_err());
        assert_eq!(parse_n(None, 3).unwrap(), vec![1, 1, 1]);
        assert_eq!(
            parse_diag(Some("2,-1/3"), 2).unwrap(),
            Some(vec![int(2), ratio(-1, 3)])
        );
    }
}
