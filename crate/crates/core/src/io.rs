//! Plain-text file formats and result emission.
//!
//! Every format is versioned by its first line. Coordinates are 1-indexed
//! in all files and CLI output; field elements are written as their
//! canonical 0-based integer indices (index 0 is the zero element).
//!
//! - code file (`listrec-code v1`): a `field p^e [modulus c0 .. ce]` line,
//!   then either `rs <degree> <eval point indices...>` or `explicit`
//!   followed by one codeword (symbol indices) per line.
//! - list file (`listrec-lists v1`): one line per coordinate, the
//!   whitespace-separated symbol indices of that coordinate's list.
//! - config file (`listrec-config v1`): `key = value` lines.
//! - graph file (`listrec-graph v1`): `codeword_id coordinate symbol` per
//!   edge.
//! - experiment outputs: JSON (canonical, lossless) and CSV (projection
//!   with fixed columns).

use crate::code::{Code, Codeword, ExplicitCode, PunctureMap, ReedSolomonCode};
use crate::expander::BipartiteCodeGraph;
use crate::experiments::{ExperimentConfig, ExperimentOutput, ListMode, MTarget, TrialRecord};
use crate::gf::{make_field, FieldSpec};
use crate::listrecovery::{ListFamily, RecoveryQuery, RecoveryResult};
use crate::rat::parse_rat;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const CODE_HEADER: &str = "listrec-code v1";
pub const LISTS_HEADER: &str = "listrec-lists v1";
pub const CONFIG_HEADER: &str = "listrec-config v1";
pub const GRAPH_HEADER: &str = "listrec-graph v1";
pub const CSV_HEADER: &str = "# listrec-experiment-csv v1";
pub const JSON_FORMAT: &str = "listrec-experiment";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("expected header '{expected}', got '{got}'")]
    BadHeader { expected: &'static str, got: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid content: {0}")]
    Invalid(String),
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(err(line, msg))
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Numbered content lines with comments and blanks stripped; checks the
/// version header.
fn content_lines<'a>(
    text: &'a str,
    header: &'static str,
) -> Result<Vec<(usize, &'a str)>, FormatError> {
    let mut lines = text.lines().enumerate();
    let first = lines
        .next()
        .map(|(_, l)| l.trim())
        .unwrap_or_default();
    if first != header {
        return Err(FormatError::BadHeader {
            expected: header,
            got: first.to_string(),
        });
    }
    Ok(lines
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn parse_field_line(line_no: usize, rest: &str) -> Result<FieldSpec, FormatError> {
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    if tokens.is_empty() {
        return parse_err(line_no, "field line needs p^e");
    }
    let (p, e) = match tokens[0].split_once('^') {
        Some((p, e)) => (
            p.parse::<u64>()
                .map_err(|_| bad_num(line_no, tokens[0]))?,
            e.parse::<u32>()
                .map_err(|_| bad_num(line_no, tokens[0]))?,
        ),
        None => (
            tokens[0]
                .parse::<u64>()
                .map_err(|_| bad_num(line_no, tokens[0]))?,
            1,
        ),
    };
    let modulus = match tokens.get(1) {
        Some(&"modulus") => {
            let coeffs: Result<Vec<u64>, _> =
                tokens[2..].iter().map(|t| t.parse::<u64>()).collect();
            Some(coeffs.map_err(|_| bad_num(line_no, "modulus coefficients"))?)
        }
        Some(other) => return parse_err(line_no, format!("unexpected token '{other}'")),
        None => None,
    };
    make_field(p, e, modulus.as_deref()).map_err(|e| FormatError::Invalid(e.to_string()))
}

fn bad_num(line: usize, what: &str) -> FormatError {
    FormatError::Parse {
        line,
        msg: format!("cannot parse number in '{what}'"),
    }
}

/// Parses a code description.
pub fn parse_code_str(text: &str) -> Result<Code, FormatError> {
    let lines = content_lines(text, CODE_HEADER)?;
    let mut iter = lines.into_iter();
    let (line_no, first) = iter
        .next()
        .ok_or_else(|| FormatError::Invalid("missing field line".into()))?;
    let rest = first
        .strip_prefix("field")
        .ok_or_else(|| FormatError::Parse {
            line: line_no,
            msg: "expected 'field p^e ...'".into(),
        })?;
    let field = parse_field_line(line_no, rest)?;

    let (line_no, kind) = iter
        .next()
        .ok_or_else(|| FormatError::Invalid("missing code record".into()))?;
    if let Some(rest) = kind.strip_prefix("rs") {
        let nums: Result<Vec<u64>, _> = rest
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect();
        let nums = nums.map_err(|_| bad_num(line_no, rest))?;
        if nums.len() < 2 {
            return parse_err(line_no, "rs needs a degree and at least one evaluation point");
        }
        let degree = nums[0] as usize;
        let eval: Result<Vec<_>, _> = nums[1..].iter().map(|&i| field.element(i)).collect();
        let eval = eval.map_err(|e| FormatError::Invalid(e.to_string()))?;
        let code = ReedSolomonCode::new(field, degree, eval)
            .map_err(|e| FormatError::Invalid(e.to_string()))?;
        Ok(Code::Rs(code))
    } else if kind == "explicit" {
        let mut rows = Vec::new();
        for (line_no, line) in iter {
            let nums: Result<Vec<u64>, _> =
                line.split_whitespace().map(|t| t.parse::<u64>()).collect();
            let nums = nums.map_err(|_| bad_num(line_no, line))?;
            let symbols: Result<Vec<_>, _> = nums.iter().map(|&i| field.element(i)).collect();
            let symbols = symbols.map_err(|e| FormatError::Invalid(e.to_string()))?;
            rows.push(Codeword::new(symbols));
        }
        let code = ExplicitCode::new(field, rows)
            .map_err(|e| FormatError::Invalid(e.to_string()))?;
        Ok(Code::Explicit(code))
    } else {
        parse_err(line_no, format!("unknown code kind '{kind}'"))
    }
}

pub fn write_code_str(code: &Code) -> String {
    let mut out = String::new();
    let field = code.field();
    writeln!(out, "{CODE_HEADER}").unwrap();
    if field.extension_degree() == 1 {
        writeln!(out, "field {}", field.characteristic()).unwrap();
    } else {
        let coeffs: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        writeln!(
            out,
            "field {}^{} modulus {}",
            field.characteristic(),
            field.extension_degree(),
            coeffs.join(" ")
        )
        .unwrap();
    }
    match code {
        Code::Rs(rs) => {
            let pts: Vec<String> = rs.eval_points.iter().map(|p| p.index().to_string()).collect();
            writeln!(out, "rs {} {}", rs.degree, pts.join(" ")).unwrap();
        }
        Code::Explicit(ex) => {
            writeln!(out, "explicit").unwrap();
            for c in &ex.codewords {
                let syms: Vec<String> = c.symbols.iter().map(|s| s.index().to_string()).collect();
                writeln!(out, "{}", syms.join(" ")).unwrap();
            }
        }
    }
    out
}

/// Parses a list family; element validity is checked against `field`.
pub fn parse_lists_str(text: &str, field: &FieldSpec) -> Result<ListFamily, FormatError> {
    let lines = content_lines(text, LISTS_HEADER)?;
    let mut lists = Vec::new();
    for (line_no, line) in lines {
        let nums: Result<Vec<u64>, _> =
            line.split_whitespace().map(|t| t.parse::<u64>()).collect();
        lists.push(nums.map_err(|_| bad_num(line_no, line))?);
    }
    ListFamily::new(field, lists).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn write_lists_str(lists: &ListFamily) -> String {
    let mut out = String::new();
    writeln!(out, "{LISTS_HEADER}").unwrap();
    for list in lists.lists() {
        let syms: Vec<String> = list.iter().map(|s| s.index().to_string()).collect();
        writeln!(out, "{}", syms.join(" ")).unwrap();
    }
    out
}

/// Edge list of G(C): `codeword_id coordinate symbol`, coordinates
/// 1-indexed.
pub fn write_graph_str(graph: &BipartiteCodeGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{GRAPH_HEADER}").unwrap();
    for (id, cw) in graph.codewords.iter().enumerate() {
        for (i, s) in cw.symbols.iter().enumerate() {
            writeln!(out, "{id} {} {}", i + 1, s.index()).unwrap();
        }
    }
    out
}

/// Parsed experiment configuration plus the output base path, if any.
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    pub out_base: Option<PathBuf>,
}

/// Parses a `key = value` config. Paths are resolved relative to
/// `base_dir`. Recognized keys: code, alpha, rho, epsilon, m, rate,
/// trials, seed, lists (random | gr06 | sumset | file:<path>), ell, t,
/// work_cap, enumeration_cap, out.
pub fn parse_config_str(text: &str, base_dir: &Path) -> Result<LoadedConfig, FormatError> {
    let lines = content_lines(text, CONFIG_HEADER)?;
    let mut code: Option<Code> = None;
    let mut alpha = None;
    let mut rho = None;
    let mut epsilon = None;
    let mut m: Option<MTarget> = None;
    let mut trials: u64 = 1;
    let mut seed: u64 = 0;
    let mut lists_key: Option<String> = None;
    let mut ell: Option<usize> = None;
    let mut t: Option<u64> = None;
    let mut work_cap = crate::listrecovery::DEFAULT_WORK_CAP;
    let mut enumeration_cap = crate::code::DEFAULT_ENUMERATION_CAP;
    let mut out_base = None;

    for (line_no, line) in lines {
        let Some((key, value)) = line.split_once('=') else {
            return parse_err(line_no, "expected 'key = value'");
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "code" => {
                let path = base_dir.join(value);
                let text = std::fs::read_to_string(&path)
                    .map_err(|source| FormatError::Read { path, source })?;
                code = Some(parse_code_str(&text)?);
            }
            "alpha" => alpha = Some(parse_rat(value).map_err(|m| err(line_no, m))?),
            "rho" => rho = Some(parse_rat(value).map_err(|m| err(line_no, m))?),
            "epsilon" => epsilon = Some(parse_rat(value).map_err(|m| err(line_no, m))?),
            "m" => {
                let v: usize = value.parse().map_err(|_| bad_num(line_no, value))?;
                m = Some(MTarget::Size(v));
            }
            "rate" => m = Some(MTarget::Rate(parse_rat(value).map_err(|m| err(line_no, m))?)),
            "trials" => trials = value.parse().map_err(|_| bad_num(line_no, value))?,
            "seed" => seed = value.parse().map_err(|_| bad_num(line_no, value))?,
            "lists" => lists_key = Some(value.to_string()),
            "ell" => ell = Some(value.parse().map_err(|_| bad_num(line_no, value))?),
            "t" => t = Some(value.parse().map_err(|_| bad_num(line_no, value))?),
            "work_cap" => work_cap = value.parse().map_err(|_| bad_num(line_no, value))?,
            "enumeration_cap" => {
                enumeration_cap = value.parse().map_err(|_| bad_num(line_no, value))?
            }
            "out" => out_base = Some(base_dir.join(value)),
            other => return parse_err(line_no, format!("unknown key '{other}'")),
        }
    }

    let code = code.ok_or_else(|| FormatError::Invalid("config needs 'code'".into()))?;
    let lists = match lists_key.as_deref() {
        Some("random") | None => ListMode::Random {
            ell: ell.ok_or_else(|| {
                FormatError::Invalid("lists = random needs 'ell'".into())
            })?,
        },
        Some("gr06") => ListMode::Gr06,
        Some("sumset") => ListMode::Sumset {
            t: t.ok_or_else(|| FormatError::Invalid("lists = sumset needs 't'".into()))?,
        },
        Some(other) => match other.strip_prefix("file:") {
            Some(rel) => {
                let path = base_dir.join(rel.trim());
                let text = std::fs::read_to_string(&path)
                    .map_err(|source| FormatError::Read { path, source })?;
                ListMode::Fixed {
                    lists: parse_lists_str(&text, code.field())?,
                }
            }
            None => {
                return Err(FormatError::Invalid(format!(
                    "unknown lists mode '{other}'"
                )))
            }
        },
    };

    let config = ExperimentConfig {
        code,
        alpha: alpha.ok_or_else(|| FormatError::Invalid("config needs 'alpha'".into()))?,
        rho: rho.ok_or_else(|| FormatError::Invalid("config needs 'rho'".into()))?,
        epsilon,
        m: m.ok_or_else(|| FormatError::Invalid("config needs 'm' or 'rate'".into()))?,
        trials,
        seed,
        lists,
        work_cap,
        enumeration_cap,
    };
    Ok(LoadedConfig { config, out_base })
}

pub fn load_config(path: &Path) -> Result<LoadedConfig, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_config_str(&text, base)
}

/// The canonical JSON document for an experiment run.
#[derive(Serialize)]
struct ExperimentDocument<'a> {
    format: &'static str,
    version: u32,
    config: &'a ExperimentConfig,
    trials: &'a [TrialRecord],
    summary: &'a crate::experiments::Summary,
}

pub fn experiment_json(config: &ExperimentConfig, output: &ExperimentOutput) -> String {
    let doc = ExperimentDocument {
        format: JSON_FORMAT,
        version: 1,
        config,
        trials: &output.trials,
        summary: &output.summary,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// CSV projection of the trial records. Columns:
/// trial,seed,m,kept,lists_digest,ell,recovered,theorem_bound,
/// exceeded_theorem,johnson_bound,exceeded_johnson,collided
/// `kept` is quoted, space-separated, 1-indexed; empty johnson fields mean
/// the bound was not applicable.
pub fn experiment_csv(output: &ExperimentOutput) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    writeln!(
        out,
        "trial,seed,m,kept,lists_digest,ell,recovered,theorem_bound,\
         exceeded_theorem,johnson_bound,exceeded_johnson,collided"
    )
    .unwrap();
    for r in &output.trials {
        let kept: Vec<String> = r.kept.iter().map(|&i| (i + 1).to_string()).collect();
        let johnson = r
            .johnson_bound
            .as_ref()
            .map(|j| j.to_string())
            .unwrap_or_default();
        let exceeded_johnson = r
            .exceeded_johnson
            .map(|b| b.to_string())
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},\"{}\",{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            r.m,
            kept.join(" "),
            r.lists_digest,
            r.ell,
            r.recovered,
            r.theorem_bound,
            r.exceeded_theorem,
            johnson,
            exceeded_johnson,
            r.collided
        )
        .unwrap();
    }
    out
}

/// Writes `<base>.json` and `<base>.csv`.
pub fn write_experiment_files(
    base: &Path,
    config: &ExperimentConfig,
    output: &ExperimentOutput,
) -> Result<(PathBuf, PathBuf), FormatError> {
    let json_path = base.with_extension("json");
    let csv_path = base.with_extension("csv");
    std::fs::write(&json_path, experiment_json(config, output)).map_err(|source| {
        FormatError::Write {
            path: json_path.clone(),
            source,
        }
    })?;
    std::fs::write(&csv_path, experiment_csv(output)).map_err(|source| FormatError::Write {
        path: csv_path.clone(),
        source,
    })?;
    Ok((json_path, csv_path))
}

/// JSON record for a single recovery call: query echo, counts, codewords,
/// work counters.
#[derive(Serialize)]
pub struct RecoveryDocument<'a> {
    pub format: &'static str,
    pub version: u32,
    pub query: &'a RecoveryQuery,
    pub result: &'a RecoveryResult,
}

pub fn recovery_json(query: &RecoveryQuery, result: &RecoveryResult) -> String {
    let doc = RecoveryDocument {
        format: "listrec-recovery",
        version: 1,
        query,
        result,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Renders a puncture map 1-indexed for output files and CLI echoes.
pub fn map_one_indexed(map: &PunctureMap) -> Vec<usize> {
    map.kept.iter().map(|&i| i + 1).collect()
}

/// Parses 1-indexed coordinate lists from CLI input.
pub fn parse_one_indexed(tokens: &[String]) -> Result<PunctureMap, FormatError> {
    let mut kept = Vec::new();
    for tok in tokens {
        for part in tok.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let v: usize = part
                .parse()
                .map_err(|_| FormatError::Invalid(format!("bad coordinate '{part}'")))?;
            if v == 0 {
                return Err(FormatError::Invalid(
                    "coordinates are 1-indexed; got 0".into(),
                ));
            }
            kept.push(v - 1);
        }
    }
    kept.sort_unstable();
    kept.dedup();
    PunctureMap::new(kept).map_err(|e| FormatError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn code_roundtrip_rs() {
        let text = "listrec-code v1\n# demo\nfield 5\nrs 1 0 1 2\n";
        let code = parse_code_str(text).unwrap();
        match &code {
            Code::Rs(rs) => {
                assert_eq!(rs.degree, 1);
                assert_eq!(rs.len(), 3);
            }
            _ => panic!("expected rs"),
        }
        let written = write_code_str(&code);
        let again = parse_code_str(&written).unwrap();
        assert_eq!(write_code_str(&again), written);
    }

    #[test]
    fn code_roundtrip_explicit_extension_field() {
        let text = "listrec-code v1\nfield 2^2 modulus 1 1 1\nexplicit\n0 0 0\n1 2 3\n";
        let code = parse_code_str(text).unwrap();
        match &code {
            Code::Explicit(ex) => assert_eq!(ex.size(), 2),
            _ => panic!("expected explicit"),
        }
        let written = write_code_str(&code);
        assert_eq!(parse_code_str(&written).unwrap().size(), 2);
    }

    #[test]
    fn header_is_mandatory() {
        assert!(matches!(
            parse_code_str("field 5\nrs 1 0 1 2\n"),
            Err(FormatError::BadHeader { .. })
        ));
    }

    #[test]
    fn lists_roundtrip() {
        let f = make_field(5, 1, None).unwrap();
        let text = "listrec-lists v1\n0 1\n2\n3 4\n";
        let lists = parse_lists_str(text, &f).unwrap();
        assert_eq!(lists.len(), 3);
        assert_eq!(lists.ell(), 2);
        assert_eq!(parse_lists_str(&write_lists_str(&lists), &f).unwrap(), lists);
    }

    #[test]
    fn config_parses_inline() {
        let dir = std::env::temp_dir().join("listrec-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("c.txt"),
            "listrec-code v1\nfield 5\nrs 1 0 1 2 3 4\n",
        )
        .unwrap();
        let text = "listrec-config v1\n\
                    code = c.txt\n\
                    alpha = 1\n\
                    rho = 0\n\
                    m = 3\n\
                    trials = 2\n\
                    seed = 7\n\
                    lists = random\n\
                    ell = 2\n";
        let loaded = parse_config_str(text, &dir).unwrap();
        assert_eq!(loaded.config.trials, 2);
        assert_eq!(loaded.config.alpha, rat(1, 1));
        assert!(matches!(loaded.config.lists, ListMode::Random { ell: 2 }));
        let out = crate::experiments::run_experiment(&loaded.config).unwrap();
        assert_eq!(out.trials.len(), 2);
    }

    #[test]
    fn csv_is_versioned_and_flat() {
        let dir = std::env::temp_dir().join("listrec-io-test2");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(
            dir.join("c.txt"),
            "listrec-code v1\nfield 5\nrs 1 0 1 2 3 4\n",
        )
        .unwrap();
        let text = "listrec-config v1\ncode = c.txt\nalpha = 1\nrho = 0\nm = 3\n\
                    trials = 2\nseed = 7\nlists = random\nell = 2\n";
        let loaded = parse_config_str(text, &dir).unwrap();
        let out = crate::experiments::run_experiment(&loaded.config).unwrap();
        let csv = experiment_csv(&out);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert!(lines.next().unwrap().starts_with("trial,seed,m,kept"));
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn one_indexed_parsing() {
        let map = parse_one_indexed(&["1,3".into(), "4".into()]).unwrap();
        assert_eq!(map.kept, vec![0, 2, 3]);
        assert!(parse_one_indexed(&["0".into()]).is_err());
        assert_eq!(map_one_indexed(&map), vec![1, 3, 4]);
    }
}
