use std::path::{Path, PathBuf};

use clap::Subcommand;
use legraph::{
    decide_isotopy, default_config, is_simple, match_spheres, reachability_oracle, reduce_to_p0,
    rotation_vector, Difference, DividingConfig, Error, IsotopyVerdict, Presentation, Sign,
    SimplicityVerdict, ORACLE_BOUND,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::{self, FormatError};

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// tb and rot of every cycle.
    Invariants { file: PathBuf },
    /// Which simplicity criterion applies to the underlying graph.
    Simple { file: PathBuf },
    /// Decide whether two presentations of one labeled graph are isotopic.
    Isotopic { first: PathBuf, second: PathBuf },
    /// Replace positive-twist edges by handle gadgets.
    Reduce { file: PathBuf },
    /// Bypass moves taking one dividing set to the other.
    Match { first: PathBuf, second: PathBuf },
    /// Bypass classes of chord diagrams on 2n points.
    Oracle {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Library(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Distinct, unmatched or undetermined.
    Negative,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Negative => 1,
        }
    }
}

/// Input errors exit with this code.
pub const INPUT_ERROR: i32 = 2;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: String,
    pub witnesses: Value,
    pub tables: Value,
    #[serde(skip)]
    pub outcome: Outcome,
}

impl Report {
    fn new(command: &str, inputs: Vec<String>, verdict: &str, outcome: Outcome) -> Self {
        Report {
            command: command.into(),
            inputs,
            verdict: verdict.into(),
            witnesses: json!({}),
            tables: json!({}),
            outcome,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict);
        if let Value::Object(w) = &self.witnesses {
            for (k, v) in w {
                match v {
                    Value::String(s) if s.contains('\n') => {
                        out.push_str(&format!("{k}:\n{s}"));
                    }
                    _ => out.push_str(&format!("{k}: {v}\n")),
                }
            }
        }
        if let Value::Object(t) = &self.tables {
            for (name, table) in t {
                out.push_str(&format!("\n[{name}]\n"));
                let cols = table["columns"].as_array().cloned().unwrap_or_default();
                let rows = table["rows"].as_array().cloned().unwrap_or_default();
                let cell = |v: &Value| match v {
                    Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                let mut grid = vec![cols.iter().map(cell).collect::<Vec<_>>()];
                for r in &rows {
                    grid.push(
                        r.as_array()
                            .map(|r| r.iter().map(cell).collect())
                            .unwrap_or_default(),
                    );
                }
                let width: Vec<usize> = (0..cols.len())
                    .map(|i| {
                        grid.iter()
                            .map(|r| r.get(i).map_or(0, String::len))
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                for r in grid {
                    let line: Vec<String> = r
                        .iter()
                        .zip(&width)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn table(columns: &[&str], rows: Vec<Value>) -> Value {
    json!({ "columns": columns, "rows": rows })
}

fn load(path: &Path) -> Result<format::Document, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    format::parse(&text).map_err(|source| CliError::Format { path: name, source })
}

fn with_config(doc: format::Document) -> Result<(Presentation, DividingConfig), CliError> {
    let d = match doc.config {
        Some(d) => d,
        None => default_config(&doc.presentation)?,
    };
    Ok((doc.presentation, d))
}

fn show(path: &Path) -> String {
    path.display().to_string()
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Invariants { file } => invariants(file),
        Command::Simple { file } => simple(file),
        Command::Isotopic { first, second } => isotopic(first, second),
        Command::Reduce { file } => reduce(file),
        Command::Match { first, second } => matching(first, second),
        Command::Oracle { n } => oracle(*n),
    }
}

fn invariants(file: &Path) -> Result<Report, CliError> {
    let doc = load(file)?;
    let from_file = doc.config.is_some();
    let (p, d) = with_config(doc)?;
    let rot = rotation_vector(&p, &d)?;
    let rows = p
        .cycles()
        .iter()
        .zip(p.tb_vector())
        .zip(rot)
        .map(|((c, tb), r)| json!([c.to_string(), tb, r]))
        .collect();
    let mut r = Report::new("invariants", vec![show(file)], "computed", Outcome::Success);
    r.witnesses = json!({
        "dividing_set": if from_file { "file" } else { "canonical" },
        "positive_edges": p.positive_edges().edges.len(),
    });
    r.tables = json!({ "cycles": table(&["cycle", "tb", "rot"], rows) });
    Ok(r)
}

fn simple(file: &Path) -> Result<Report, CliError> {
    let p = load(file)?.presentation;
    let s = is_simple(p.embedding());
    let (verdict, outcome) = match s.verdict {
        SimplicityVerdict::ByTbAndRot => ("simple by tb and rot", Outcome::Success),
        SimplicityVerdict::ByRibbonAndRot => ("simple by ribbon and rot", Outcome::Success),
        SimplicityVerdict::Undetermined => ("undetermined", Outcome::Negative),
    };
    let mut r = Report::new("simple", vec![show(file)], verdict, outcome);
    let minor = s.minor.as_ref().map(|(pat, sets)| {
        json!({
            "pattern": format!("{pat:?}"),
            "branch_sets": sets
                .iter()
                .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    });
    r.witnesses = json!({
        "minor_clause": s.minor_clause,
        "connectivity_clause": s.connectivity_clause,
        "connectivity": s.connectivity,
        "minor": minor,
        "separator": s.separator.map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    });
    Ok(r)
}

fn isotopic(first: &Path, second: &Path) -> Result<Report, CliError> {
    let (p1, d1) = with_config(load(first)?)?;
    let (p2, d2) = with_config(load(second)?)?;
    let inputs = vec![show(first), show(second)];
    let v = match decide_isotopy(&p1, &d1, &p2, &d2) {
        Err(Error::GraphMismatch) => {
            let mut r = Report::new("isotopic", inputs, "distinct", Outcome::Negative);
            r.witnesses = json!({ "difference": "graph" });
            return Ok(r);
        }
        v => v?,
    };
    Ok(match v {
        IsotopyVerdict::Isotopic { witness } => {
            let mut r = Report::new("isotopic", inputs, "isotopic", Outcome::Success);
            r.witnesses = json!({
                "moves": witness.as_ref().map(|w| w.moves.len()),
                "reoriented": witness.as_ref().map(|w| w.reoriented),
            });
            r
        }
        IsotopyVerdict::Distinct(diff) => {
            let mut r = Report::new("isotopic", inputs, "distinct", Outcome::Negative);
            r.witnesses = match diff {
                Difference::Ribbon => json!({ "difference": "oriented ribbon" }),
                Difference::Rot {
                    cycle,
                    first,
                    second,
                } => json!({
                    "difference": "rot",
                    "cycle": cycle.to_string(),
                    "first": first,
                    "second": second,
                }),
            };
            r
        }
    })
}

fn reduce(file: &Path) -> Result<Report, CliError> {
    let p = load(file)?.presentation;
    let red = reduce_to_p0(&p)?;
    let mut rows = Vec::new();
    for c in &red.cycles {
        let (pos, neg) = c
            .ledger
            .iter()
            .fold((0, 0), |(a, b), l| (a + l.positive, b + l.negative));
        rows.push(json!([c.source.to_string(), c.image.to_string(), pos, neg]));
    }
    let mut r = Report::new("reduce", vec![show(file)], "reduced", Outcome::Success);
    r.witnesses = json!({
        "reoriented": red.reoriented,
        "gadgets": red.gadgets.iter().map(|g| g.edge.to_string()).collect::<Vec<_>>(),
        "presentation": format::serialize(&red.j, None),
    });
    r.tables = json!({
        "ledger": table(&["cycle", "image", "positive", "negative"], rows),
    });
    Ok(r)
}

fn matching(first: &Path, second: &Path) -> Result<Report, CliError> {
    let (p1, d1) = with_config(load(first)?)?;
    let (p2, d2) = with_config(load(second)?)?;
    let inputs = vec![show(first), show(second)];
    match match_spheres(&p1, &p2, &d1, &d2) {
        Ok(m) => {
            let mut r = Report::new("match", inputs, "matched", Outcome::Success);
            r.witnesses = json!({
                "moves": m.moves.len(),
                "reoriented": m.reoriented,
                "strategies": m.strategies.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>(),
            });
            let rows = m
                .moves
                .moves
                .iter()
                .enumerate()
                .map(|(i, mv)| json!([i, mv.to_string()]))
                .collect();
            r.tables = json!({ "moves": table(&["step", "move"], rows) });
            Ok(r)
        }
        Err(Error::NoMatch(why)) => {
            let mut r = Report::new("match", inputs, "no match", Outcome::Negative);
            r.witnesses = json!({ "reason": why });
            Ok(r)
        }
        Err(e) => Err(e.into()),
    }
}

fn oracle(n: usize) -> Result<Report, CliError> {
    let classes = reachability_oracle(n, Sign::Plus, ORACLE_BOUND)?;
    let total: usize = classes.iter().map(|c| c.members.len()).sum();
    let rot_of = |c: &legraph::OracleClass| {
        let mut r = c.rots.clone();
        r.sort_unstable();
        r.dedup();
        r
    };
    let mut rots: Vec<i64> = classes
        .iter()
        .flat_map(|c| c.rots.iter().copied())
        .collect();
    rots.sort_unstable();
    rots.dedup();
    let fibers = classes.iter().all(|c| rot_of(c).len() == 1) && rots.len() == classes.len();
    let (verdict, outcome) = if fibers {
        ("classes are rot fibers", Outcome::Success)
    } else {
        ("classes differ from rot fibers", Outcome::Negative)
    };
    let mut r = Report::new("oracle", vec![format!("n={n}")], verdict, outcome);
    r.witnesses = json!({ "matchings": total, "classes": classes.len() });
    let rows = classes
        .iter()
        .enumerate()
        .map(|(i, c)| json!([i, c.members.len(), rot_of(c)]))
        .collect();
    r.tables = json!({ "classes": table(&["class", "size", "rot"], rows) });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_three() {
        let r = oracle(3).unwrap();
        assert_eq!(r.witnesses["matchings"], 5);
        assert_eq!(r.outcome, Outcome::Success);
        assert!(oracle(ORACLE_BOUND + 1).is_err());
    }

    #[test]
    fn text_tables_align() {
        let r = oracle(2).unwrap();
        let t = r.to_text();
        assert!(t.starts_with("oracle: classes are rot fibers\n"));
        assert!(t.contains("class  size  rot"));
    }
}
