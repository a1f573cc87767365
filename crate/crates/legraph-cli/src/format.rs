//! Line-oriented presentation files.
//!
//! ```text
//! # theta
//! vertex v0 sign +
//! vertex v1 sign +
//! edge e0 v0 v1
//! twist e0 -2/2
//! rot v0: e0.0 e1.0 e2.0
//! chords 0: (0 1) (2 3)
//! ```
//!
//! Ids may be written with or without their `v`/`e` prefix. Chord indices
//! count dividing points along the walk of the given face.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use legraph::{
    face_layouts, validate_config, ConfigView, Diagnostic, DividingConfig, EdgeId, End, Error,
    Graph, Matching, Presentation, RawPresentation, RotationSystem, Sign, Twist, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
    #[error("{0}")]
    Presentation(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// A parsed file: the presentation and, if the file had `chords` records,
/// its dividing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub presentation: Presentation,
    pub config: Option<DividingConfig>,
}

fn id(tok: &str, prefix: char, line: usize) -> Result<u32, FormatError> {
    tok.strip_prefix(prefix)
        .unwrap_or(tok)
        .parse()
        .map_err(|_| syntax(line, format!("bad id `{tok}`")))
}

fn end(tok: &str, line: usize) -> Result<End, FormatError> {
    let (e, x) = tok
        .rsplit_once('.')
        .ok_or_else(|| syntax(line, format!("bad edge end `{tok}`")))?;
    let x = match x {
        "0" => 0,
        "1" => 1,
        _ => return Err(syntax(line, format!("bad edge end `{tok}`"))),
    };
    Ok(End::new(EdgeId(id(e, 'e', line)?), x))
}

fn twist(tok: &str, line: usize) -> Result<Twist, FormatError> {
    let n = tok
        .strip_suffix("/2")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| syntax(line, format!("twist `{tok}` is not of the form <n>/2")))?;
    Ok(Twist(n))
}

#[derive(Default)]
struct Records {
    vertices: Vec<(VertexId, Sign, usize)>,
    edges: Vec<(EdgeId, VertexId, VertexId, usize)>,
    twists: BTreeMap<EdgeId, (Twist, usize)>,
    rot: BTreeMap<VertexId, (Vec<End>, usize)>,
    chords: FaceChords,
}

/// Chord pairs per face, with the line they came from.
type FaceChords = BTreeMap<usize, (Vec<(usize, usize)>, usize)>;

fn read_records(text: &str) -> Result<Records, FormatError> {
    let mut r = Records::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match head {
            "vertex" => {
                let [v, "sign", s] = toks[..] else {
                    return Err(syntax(line, "expected `vertex <id> sign <+|->`"));
                };
                let s = match s {
                    "+" => Sign::Plus,
                    "-" => Sign::Minus,
                    _ => return Err(syntax(line, format!("bad sign `{s}`"))),
                };
                r.vertices.push((VertexId(id(v, 'v', line)?), s, line));
            }
            "edge" => {
                let [e, a, b] = toks[..] else {
                    return Err(syntax(line, "expected `edge <id> <v> <w>`"));
                };
                r.edges.push((
                    EdgeId(id(e, 'e', line)?),
                    VertexId(id(a, 'v', line)?),
                    VertexId(id(b, 'v', line)?),
                    line,
                ));
            }
            "twist" => {
                let [e, t] = toks[..] else {
                    return Err(syntax(line, "expected `twist <edge> <n>/2`"));
                };
                let e = EdgeId(id(e, 'e', line)?);
                if r.twists.insert(e, (twist(t, line)?, line)).is_some() {
                    return Err(syntax(line, format!("second twist for {e}")));
                }
            }
            "rot" => {
                let (v, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `rot <vertex>: <end> ...`"))?;
                let v = VertexId(id(v.trim(), 'v', line)?);
                let ends = ends
                    .split_whitespace()
                    .map(|t| end(t, line))
                    .collect::<Result<Vec<_>, _>>()?;
                if r.rot.insert(v, (ends, line)).is_some() {
                    return Err(syntax(line, format!("second rot record for {v}")));
                }
            }
            "chords" => {
                let (f, pairs) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax(line, "expected `chords <face>: (<i> <j>) ...`"))?;
                let f: usize = f
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line, format!("bad face index `{}`", f.trim())))?;
                let pairs = chord_pairs(pairs, line)?;
                if r.chords.insert(f, (pairs, line)).is_some() {
                    return Err(syntax(line, format!("second chords record for face {f}")));
                }
            }
            _ => return Err(syntax(line, format!("unknown record `{head}`"))),
        }
    }
    Ok(r)
}

fn chord_pairs(s: &str, line: usize) -> Result<Vec<(usize, usize)>, FormatError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|x| x.split_once(')'))
            .ok_or_else(|| syntax(line, format!("bad chord list near `{rest}`")))?;
        let nums: Vec<usize> = inner
            .0
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| syntax(line, format!("bad chord `({})`", inner.0)))?;
        let [i, j] = nums[..] else {
            return Err(syntax(line, format!("bad chord `({})`", inner.0)));
        };
        out.push((i, j));
        rest = inner.1.trim_start();
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let r = read_records(text)?;
    let mut signs = BTreeMap::new();
    for &(v, s, line) in &r.vertices {
        if signs.insert(v, s).is_some() {
            return Err(syntax(line, format!("duplicate vertex {v}")));
        }
    }
    let graph = Graph::new(
        r.vertices.iter().map(|x| x.0),
        r.edges.iter().map(|&(e, a, b, _)| (e, a, b)),
    )
    .map_err(|err| {
        let line = match &err {
            Error::DuplicateEdge(e) => r.edges.iter().filter(|x| x.0 == *e).nth(1),
            Error::UnknownVertex(v) => r.edges.iter().find(|x| x.1 == *v || x.2 == *v),
            _ => None,
        }
        .map_or(0, |x| x.3);
        FormatError::Invalid {
            line,
            msg: err.to_string(),
        }
    })?;
    for (e, &(_, line)) in &r.twists {
        if !graph.has_edge(*e) {
            return Err(FormatError::Invalid {
                line,
                msg: format!("twist for unknown edge {e}"),
            });
        }
    }
    let raw = RawPresentation {
        rotation: RotationSystem::new(r.rot.iter().map(|(&v, (o, _))| (v, o.clone())).collect()),
        graph,
        signs,
        twists: r.twists.iter().map(|(&e, &(t, _))| (e, t)).collect(),
    };
    if let Some(d) = raw.validate().first() {
        return Err(diagnostic(d, &r));
    }
    let presentation = raw
        .into_presentation()
        .map_err(|e| FormatError::Presentation(e.to_string()))?;
    let config = if r.chords.is_empty() {
        None
    } else {
        Some(read_config(&presentation, &r.chords)?)
    };
    Ok(Document {
        presentation,
        config,
    })
}

fn diagnostic(d: &Diagnostic, r: &Records) -> FormatError {
    let line = match d {
        Diagnostic::Parity { edge, .. } => r.twists.get(edge).map(|x| x.1),
        Diagnostic::MissingSign(v) => r.edges.iter().find(|x| x.1 == *v || x.2 == *v).map(|x| x.3),
        Diagnostic::MissingTwist(e) => r.edges.iter().find(|x| x.0 == *e).map(|x| x.3),
        Diagnostic::Rotation(_) | Diagnostic::NotSphere(_) => r.rot.values().map(|x| x.1).min(),
        Diagnostic::Disconnected => r.edges.first().map(|x| x.3),
    };
    match line {
        Some(line) => FormatError::Invalid {
            line,
            msg: d.to_string(),
        },
        None => FormatError::Presentation(d.to_string()),
    }
}

fn read_config(p: &Presentation, chords: &FaceChords) -> Result<DividingConfig, FormatError> {
    let first_line = chords.values().map(|x| x.1).min().unwrap_or(0);
    if !p.in_p0() {
        return Err(FormatError::Invalid {
            line: first_line,
            msg: "chords need every twist to be non-positive".into(),
        });
    }
    let counts: BTreeMap<EdgeId, usize> = p
        .twists()
        .iter()
        .map(|(&e, t)| (e, t.crossings()))
        .collect();
    let layouts = face_layouts(p, &counts);
    let mut pairs = Vec::new();
    for (&f, (list, line)) in chords {
        let invalid = |msg: String| FormatError::Invalid { line: *line, msg };
        let layout = layouts
            .get(f)
            .ok_or_else(|| invalid(format!("no face {f}")))?;
        let m = Matching::from_pairs(layout.len(), list).map_err(|e| invalid(e.to_string()))?;
        for (i, j) in m.pairs() {
            pairs.push((layout.occs[i], layout.occs[j]));
        }
    }
    let d = DividingConfig::new(counts, pairs).map_err(|e| FormatError::Invalid {
        line: first_line,
        msg: e.to_string(),
    })?;
    if let Some(x) = validate_config(p, &d).first() {
        return Err(FormatError::Invalid {
            line: first_line,
            msg: x.to_string(),
        });
    }
    Ok(d)
}

/// Canonical text: records sorted by id, chords by face.
pub fn serialize(p: &Presentation, d: Option<&DividingConfig>) -> String {
    let mut out = String::new();
    let g = p.graph();
    for v in g.vertices() {
        writeln!(out, "vertex {v} sign {}", p.sign(v)).unwrap();
    }
    for (e, [a, b]) in g.edges() {
        writeln!(out, "edge {e} {a} {b}").unwrap();
    }
    for (e, t) in p.twists() {
        writeln!(out, "twist {e} {t}").unwrap();
    }
    for (v, ends) in p.rotation().iter() {
        let ends: Vec<String> = ends.iter().map(End::to_string).collect();
        writeln!(out, "rot {v}: {}", ends.join(" ")).unwrap();
    }
    if let Some(view) = d.and_then(|d| ConfigView::new(p, d).ok()) {
        for f in 0..view.face_count() {
            let m = view.face_matching(f);
            if m.is_empty() {
                continue;
            }
            let pairs: Vec<String> = m
                .pairs()
                .iter()
                .map(|(i, j)| format!("({i} {j})"))
                .collect();
            writeln!(out, "chords {f}: {}", pairs.join(" ")).unwrap();
        }
    }
    out
}
