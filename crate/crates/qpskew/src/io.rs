//! Line-oriented text formats.
//!
//! Every format ignores blank lines and `#` comments.
//!
//! `.qp`: `vertex v`, `arrow a src tgt`, `potential c a1 a2 … am` (one term,
//! arrows in written order so `am` is traversed first), optionally followed
//! by `sigma_vertex x y` and `sigma_arrow a b` lines describing the action.
//!
//! `.tri`: `triangle T s0 s1 s2` (sides counterclockwise), `boundary e`,
//! `selffold T loop radius P`, `label src tgt name`.
//!
//! Representations: `dim v n` and `map a rows cols e11 e12 …` (row major).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{Path, PathExpr, Potential, Qp, Quiver};
use crate::involution::Involution;
use crate::linalg::{fmt_q, parse_q, Matrix};
use crate::reps::Representation;
use crate::surface::{SelfFold, Triangle, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Non-empty, comment-free lines split into tokens, with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Parses a `.qp` file and the action it may contain.
pub fn parse_qp(text: &str) -> Result<(Qp, Option<Involution>), ParseError> {
    let mut q = Quiver::new();
    let mut terms: Vec<(usize, crate::linalg::Q, Vec<String>)> = Vec::new();
    let mut vswaps = Vec::new();
    let mut aswaps = Vec::new();
    for (n, t) in lines(text) {
        match t[0] {
            "vertex" if t.len() == 2 => q.add_vertex(t[1]).map_err(|e| err(n, e.to_string()))?,
            "arrow" if t.len() == 4 => q.add_arrow(t[1], t[2], t[3]).map_err(|e| err(n, e.to_string()))?,
            "potential" if t.len() >= 3 => {
                let c = parse_q(t[1]).ok_or_else(|| err(n, format!("bad coefficient {}", t[1])))?;
                terms.push((n, c, t[2..].iter().map(|s| s.to_string()).collect()));
            }
            "sigma_vertex" if t.len() == 3 => vswaps.push((t[1].to_string(), t[2].to_string())),
            "sigma_arrow" if t.len() == 3 => aswaps.push((t[1].to_string(), t[2].to_string())),
            _ => return Err(err(n, format!("unrecognized line starting with {}", t[0]))),
        }
    }
    let mut x = PathExpr::zero();
    for (n, c, arrows) in terms {
        let refs: Vec<&str> = arrows.iter().map(|s| s.as_str()).collect();
        let p = Path::from_arrows(&q, &refs).map_err(|e| err(n, e.to_string()))?;
        x.add_term(c, p);
    }
    let pot = Potential::new(&q, &x).map_err(|e| err(0, e.to_string()))?;
    let action = if vswaps.is_empty() && aswaps.is_empty() {
        None
    } else {
        Some(Involution::from_swap_lists(&q, &vswaps, &aswaps).map_err(|e| err(0, e.to_string()))?)
    };
    Ok((Qp::new(q, pot), action))
}

/// Parses an action file (`sigma_vertex`/`sigma_arrow` lines only).
pub fn parse_action(text: &str, q: &Quiver) -> Result<Involution, ParseError> {
    let mut vswaps = Vec::new();
    let mut aswaps = Vec::new();
    for (n, t) in lines(text) {
        match (t[0], t.len()) {
            ("sigma_vertex", 3) => vswaps.push((t[1].to_string(), t[2].to_string())),
            ("sigma_arrow", 3) => aswaps.push((t[1].to_string(), t[2].to_string())),
            _ => return Err(err(n, format!("unrecognized line starting with {}", t[0]))),
        }
    }
    Involution::from_swap_lists(q, &vswaps, &aswaps).map_err(|e| err(0, e.to_string()))
}

/// Writes a QP (and optionally an action) in the `.qp` format.
pub fn write_qp(qp: &Qp, action: Option<&Involution>) -> String {
    let mut out = Vec::new();
    for v in qp.quiver.vertices() {
        out.push(format!("vertex {v}"));
    }
    for a in qp.quiver.arrows() {
        out.push(format!("arrow {} {} {}", a.id, a.src, a.tgt));
    }
    for (p, c) in qp.potential.expr().terms() {
        out.push(format!("potential {} {}", fmt_q(c), p.arrows.join(" ")));
    }
    if let Some(s) = action {
        let (vs, arr) = s.swaps();
        for (a, b) in vs {
            out.push(format!("sigma_vertex {a} {b}"));
        }
        for (a, b) in arr {
            out.push(format!("sigma_arrow {a} {b}"));
        }
    }
    out.join("\n")
}

pub fn parse_tri(text: &str) -> Result<Triangulation, ParseError> {
    let mut triangles = Vec::new();
    let mut boundary = BTreeSet::new();
    let mut folds = Vec::new();
    let mut labels = BTreeMap::new();
    for (n, t) in lines(text) {
        match (t[0], t.len()) {
            ("triangle", 5) => triangles.push(Triangle { id: t[1].into(), sides: [t[2].into(), t[3].into(), t[4].into()] }),
            ("boundary", k) if k >= 2 => boundary.extend(t[1..].iter().map(|s| s.to_string())),
            ("selffold", 5) => folds.push(SelfFold {
                triangle: t[1].into(),
                loop_edge: t[2].into(),
                radius: t[3].into(),
                puncture: t[4].into(),
            }),
            ("label", 4) => {
                labels.insert((t[1].to_string(), t[2].to_string()), t[3].to_string());
            }
            _ => return Err(err(n, format!("unrecognized line starting with {}", t[0]))),
        }
    }
    Ok(Triangulation::new(triangles, boundary, folds, labels))
}

pub fn write_tri(t: &Triangulation) -> String {
    let mut out = Vec::new();
    for tri in &t.triangles {
        out.push(format!("triangle {} {} {} {}", tri.id, tri.sides[0], tri.sides[1], tri.sides[2]));
    }
    for b in &t.boundary {
        out.push(format!("boundary {b}"));
    }
    for s in &t.self_folded {
        out.push(format!("selffold {} {} {} {}", s.triangle, s.loop_edge, s.radius, s.puncture));
    }
    for ((s, d), l) in &t.labels {
        out.push(format!("label {s} {d} {l}"));
    }
    out.join("\n")
}

pub fn parse_rep(text: &str, q: &Quiver) -> Result<Representation, ParseError> {
    let mut dims = BTreeMap::new();
    let mut maps = BTreeMap::new();
    for (n, t) in lines(text) {
        match t[0] {
            "dim" if t.len() == 3 => {
                let d: usize = t[2].parse().map_err(|_| err(n, "bad dimension"))?;
                dims.insert(t[1].to_string(), d);
            }
            "map" if t.len() >= 4 => {
                let r: usize = t[2].parse().map_err(|_| err(n, "bad row count"))?;
                let c: usize = t[3].parse().map_err(|_| err(n, "bad column count"))?;
                if t.len() != 4 + r * c {
                    return Err(err(n, format!("expected {} entries", r * c)));
                }
                let mut m = Matrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        let x = t[4 + i * c + j];
                        m.set(i, j, parse_q(x).ok_or_else(|| err(n, format!("bad entry {x}")))?);
                    }
                }
                maps.insert(t[1].to_string(), m);
            }
            _ => return Err(err(n, format!("unrecognized line starting with {}", t[0]))),
        }
    }
    Representation::new(q, dims, maps).map_err(|e| err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qp_round_trip() {
        let text = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\npotential 2 c b a\n";
        let (qp, act) = parse_qp(text).unwrap();
        assert!(act.is_none());
        let (again, _) = parse_qp(&write_qp(&qp, None)).unwrap();
        assert_eq!(qp, again);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_qp("vertex 1\n# fine\nbogus line\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_tri("triangle T a b\n").is_err());
    }

    #[test]
    fn rep_round_trip() {
        let q = Quiver::from_lists(&["1", "2"], &[("a", "1", "2")]);
        let text = "dim 1 1\ndim 2 2\nmap a 2 1 1 -1/2\n";
        let r = parse_rep(text, &q).unwrap();
        assert_eq!(parse_rep(&r.to_machine(), &q).unwrap(), r);
    }

    #[test]
    fn tri_round_trip() {
        let text = "triangle T a b c\ntriangle U c d e\nboundary a b d e\nlabel c c x\n";
        let t = parse_tri(text).unwrap();
        assert_eq!(parse_tri(&write_tri(&t)).unwrap(), t);
    }
}
