//! Integer linear program for weighted realizability, written in LP text
//! format, plus a checker that evaluates the model on a concrete sequence.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::builder::total_pairs;
use crate::dpcount::derive_length;
use crate::error::{Error, Result};
use crate::graph::{SeqGraph, Sequence, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    OneHot,
    Link,
    Exclude,
    Floor,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub name: String,
    pub family: Family,
    pub terms: Vec<(i64, usize)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Variable and constraint tallies of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpStats {
    pub x_vars: usize,
    pub y_vars: usize,
    pub one_hot: usize,
    pub linking: usize,
    pub exclusions: usize,
    pub floors: usize,
}

/// The model: binaries `x_v_j` (symbol `v` at position `j`) and
/// `y_u_v_i_j` (arc `(u, v)` realized by positions `i < j`), minimizing Σy.
///
/// Undirected edges contribute both arc orientations; their weight floor
/// sums the two.
#[derive(Debug, Clone)]
pub struct IlpModel {
    pub n: usize,
    pub p: usize,
    pub window: usize,
    /// Ordered arcs carrying y variables.
    pub arcs: Vec<(VertexId, VertexId)>,
    /// Position pairs `(i, j)`, 1-based, `i < j < i + w`.
    pub pairs: Vec<(usize, usize)>,
    pub names: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<usize>,
    pub target: u64,
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Sanitized labels when they are unambiguous, `v<id>` otherwise.
fn var_labels(g: &SeqGraph) -> Vec<String> {
    let clean: Vec<String> = g.labels().iter().map(|l| sanitize(l)).collect();
    let unique = clean.iter().collect::<HashSet<_>>().len() == clean.len();
    if unique && clean.iter().all(|l| !l.is_empty() && !l.contains('_')) {
        clean
    } else {
        (0..g.n()).map(|v| format!("v{v}")).collect()
    }
}

impl IlpModel {
    pub fn new(g: &SeqGraph, w: usize) -> Result<Self> {
        if !g.is_weighted() {
            return Err(Error::WrongVariant("weighted"));
        }
        if w < 2 {
            return Err(Error::InvalidWindow(w));
        }
        let p = derive_length(g, w).ok_or(Error::NoValidLength(w))?;
        let n = g.n();
        let lab = var_labels(g);

        let mut arcs = Vec::new();
        for (u, v, _) in g.edges() {
            arcs.push((u, v));
            if !g.is_directed() && u != v {
                arcs.push((v, u));
            }
        }
        let arc_set: HashSet<(VertexId, VertexId)> = arcs.iter().copied().collect();
        let pairs: Vec<(usize, usize)> = (1..=p)
            .flat_map(|i| (i + 1..=p.min(i + w - 1)).map(move |j| (i, j)))
            .collect();

        let mut names = Vec::with_capacity(n * p + arcs.len() * pairs.len());
        for v in 0..n {
            for j in 1..=p {
                names.push(format!("x_{}_{j}", lab[v]));
            }
        }
        let x = |v: VertexId, j: usize| v * p + (j - 1);
        let y_base = names.len();
        for &(a, b) in &arcs {
            for &(i, j) in &pairs {
                names.push(format!("y_{}_{}_{i}_{j}", lab[a], lab[b]));
            }
        }
        let y = |arc: usize, pair: usize| y_base + arc * pairs.len() + pair;

        let mut constraints = Vec::new();
        for j in 1..=p {
            constraints.push(Constraint {
                name: format!("onehot_{j}"),
                family: Family::OneHot,
                terms: (0..n).map(|v| (1, x(v, j))).collect(),
                sense: Sense::Eq,
                rhs: 1,
            });
        }
        for (ai, &(a, b)) in arcs.iter().enumerate() {
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                let yv = y(ai, pi);
                let tag = format!("{}_{}_{i}_{j}", lab[a], lab[b]);
                constraints.push(Constraint {
                    name: format!("la_{tag}"),
                    family: Family::Link,
                    terms: vec![(-1, x(a, i)), (1, yv)],
                    sense: Sense::Le,
                    rhs: 0,
                });
                constraints.push(Constraint {
                    name: format!("lb_{tag}"),
                    family: Family::Link,
                    terms: vec![(-1, x(b, j)), (1, yv)],
                    sense: Sense::Le,
                    rhs: 0,
                });
                constraints.push(Constraint {
                    name: format!("lc_{tag}"),
                    family: Family::Link,
                    terms: vec![(1, x(a, i)), (1, x(b, j)), (-1, yv)],
                    sense: Sense::Le,
                    rhs: 1,
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if arc_set.contains(&(a, b)) {
                    continue;
                }
                for &(i, j) in &pairs {
                    constraints.push(Constraint {
                        name: format!("ne_{}_{}_{i}_{j}", lab[a], lab[b]),
                        family: Family::Exclude,
                        terms: vec![(1, x(a, i)), (1, x(b, j))],
                        sense: Sense::Le,
                        rhs: 1,
                    });
                }
            }
        }
        for (u, v, pi) in g.edges() {
            let mut terms = Vec::new();
            for (ai, &arc) in arcs.iter().enumerate() {
                if arc == (u, v) || (!g.is_directed() && arc == (v, u)) {
                    terms.extend((0..pairs.len()).map(|k| (1, y(ai, k))));
                }
            }
            constraints.push(Constraint {
                name: format!("floor_{}_{}", lab[u], lab[v]),
                family: Family::Floor,
                terms,
                sense: Sense::Ge,
                rhs: pi as i64,
            });
        }
        let objective = (y_base..names.len()).collect();
        Ok(IlpModel {
            n,
            p,
            window: w,
            arcs,
            pairs,
            names,
            constraints,
            objective,
            target: g.total_weight(),
        })
    }

    pub fn stats(&self) -> IlpStats {
        let fam = |f: Family| self.constraints.iter().filter(|c| c.family == f).count();
        IlpStats {
            x_vars: self.n * self.p,
            y_vars: self.arcs.len() * self.pairs.len(),
            one_hot: fam(Family::OneHot),
            linking: fam(Family::Link),
            exclusions: fam(Family::Exclude),
            floors: fam(Family::Floor),
        }
    }

    /// LP-format text; lines are wrapped every eight terms.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ window {} length {} target objective {}",
            self.window, self.p, self.target
        );
        out.push_str("Minimize\n obj:");
        let obj: Vec<(i64, usize)> = self.objective.iter().map(|&v| (1, v)).collect();
        self.write_terms(&mut out, &obj);
        out.push('\n');
        out.push_str("Subject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}:", c.name);
            self.write_terms(&mut out, &c.terms);
            let op = match c.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            let _ = writeln!(out, " {op} {}", c.rhs);
        }
        out.push_str("Binary\n");
        for chunk in self.names.chunks(8) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
        out.push_str("End\n");
        out
    }

    fn write_terms(&self, out: &mut String, terms: &[(i64, usize)]) {
        if terms.is_empty() {
            // LP format needs at least one term; a zero coefficient keeps the row valid
            let _ = write!(out, " 0 {}", self.names.first().map(String::as_str).unwrap_or("x"));
            return;
        }
        for (k, &(c, v)) in terms.iter().enumerate() {
            if k > 0 && k % 8 == 0 {
                out.push_str("\n   ");
            }
            let sign = if c < 0 {
                " -"
            } else if k == 0 {
                ""
            } else {
                " +"
            };
            let mag = c.abs();
            if mag == 1 {
                let _ = write!(out, "{sign} {}", self.names[v]);
            } else {
                let _ = write!(out, "{sign} {mag} {}", self.names[v]);
            }
        }
    }

    /// The 0/1 assignment induced by `x`.
    pub fn assignment(&self, x: &Sequence) -> Result<Vec<u8>> {
        if x.len() != self.p {
            return Err(Error::LengthMismatch {
                expected: self.p,
                found: x.len(),
            });
        }
        let t = x.tokens();
        if let Some(&bad) = t.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut val = vec![0u8; self.names.len()];
        for (j, &v) in t.iter().enumerate() {
            val[v * self.p + j] = 1;
        }
        let y_base = self.n * self.p;
        for (ai, &(a, b)) in self.arcs.iter().enumerate() {
            for (k, &(i, j)) in self.pairs.iter().enumerate() {
                if t[i - 1] == a && t[j - 1] == b {
                    val[y_base + ai * self.pairs.len() + k] = 1;
                }
            }
        }
        Ok(val)
    }

    /// Every constraint holds and the objective equals Σπ.
    pub fn check(&self, val: &[u8]) -> bool {
        let ok = self.constraints.iter().all(|c| {
            let lhs: i64 = c.terms.iter().map(|&(k, v)| k * val[v] as i64).sum();
            match c.sense {
                Sense::Le => lhs <= c.rhs,
                Sense::Ge => lhs >= c.rhs,
                Sense::Eq => lhs == c.rhs,
            }
        });
        let obj: u64 = self.objective.iter().map(|&v| val[v] as u64).sum();
        ok && obj == self.target
    }
}

pub fn emit(g: &SeqGraph, w: usize) -> Result<String> {
    Ok(IlpModel::new(g, w)?.to_lp())
}

/// Evaluates the model on the assignment induced by `x`.
pub fn verify_assignment(g: &SeqGraph, w: usize, x: &Sequence) -> Result<bool> {
    let m = IlpModel::new(g, w)?;
    let val = m.assignment(x)?;
    Ok(m.check(&val))
}

/// Closed-form tallies: `n·p` x-variables, `arcs·|C|` y-variables,
/// `p` one-hot rows, `3·arcs·|C|` linking rows, `non-arcs·|C|`
/// exclusions and one floor per edge.
pub fn expected_stats(g: &SeqGraph, w: usize) -> Option<IlpStats> {
    let p = derive_length(g, w)?;
    let c = total_pairs(p, w) as usize;
    let loops = g.edges().filter(|&(u, v, _)| u == v).count();
    let arcs = if g.is_directed() {
        g.edge_count()
    } else {
        2 * (g.edge_count() - loops) + loops
    };
    let n = g.n();
    Some(IlpStats {
        x_vars: n * p,
        y_vars: arcs * c,
        one_hot: p,
        linking: 3 * arcs * c,
        exclusions: (n * n - arcs) * c,
        floors: g.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{build_words, BuildOptions};

    fn parse(g: &SeqGraph, s: &str) -> Sequence {
        Sequence::new(s.split_whitespace().map(|t| g.vertex_by_label(t).unwrap()).collect())
    }

    #[test]
    fn single_arc_model() {
        let mut g = SeqGraph::with_labels(vec!["u".into(), "v".into()], true, true).unwrap();
        g.add_weighted_edge(0, 1, 1).unwrap();
        let m = IlpModel::new(&g, 2).unwrap();
        assert_eq!(m.p, 2);
        let s = m.stats();
        assert_eq!((s.one_hot, s.y_vars, s.floors), (2, 1, 1));
        assert_eq!(Some(s), expected_stats(&g, 2));
        assert!(verify_assignment(&g, 2, &Sequence::new(vec![0, 1])).unwrap());
        assert!(!verify_assignment(&g, 2, &Sequence::new(vec![1, 0])).unwrap());
        let lp = m.to_lp();
        assert!(lp.contains(" obj: y_u_v_1_2\n"));
        assert!(lp.contains(" onehot_1: x_u_1 + x_v_1 = 1\n"));
    }

    #[test]
    fn abracadabra_checks() {
        let (g2, _) = build_words("a b r a c a d a b r a", BuildOptions::new(2, true, true)).unwrap();
        assert!(verify_assignment(&g2, 2, &parse(&g2, "a b r a c a d a b r a")).unwrap());
        let (g3, _) = build_words("a b r a c a d a b r a", BuildOptions::new(3, true, true)).unwrap();
        let m = IlpModel::new(&g3, 3).unwrap();
        assert_eq!((m.p, m.n), (11, 5));
        assert!(!verify_assignment(&g3, 3, &parse(&g3, "a b r a b r a d a c a")).unwrap());
        assert_eq!(Some(m.stats()), expected_stats(&g3, 3));
    }

    #[test]
    fn errors() {
        let mut g = SeqGraph::new(2, true, true);
        g.add_weighted_edge(0, 1, 1).unwrap();
        assert_eq!(
            verify_assignment(&g, 2, &Sequence::new(vec![0, 1, 0])),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        );
        let mut h = SeqGraph::new(2, true, true);
        h.add_weighted_edge(0, 1, 2).unwrap();
        assert_eq!(emit(&h, 3).unwrap_err(), Error::NoValidLength(3));
    }

    #[test]
    fn undirected_floor_sums_orientations() {
        let mut g = SeqGraph::new(2, false, true);
        g.add_weighted_edge(0, 1, 2).unwrap();
        g.add_weighted_edge(1, 1, 1).unwrap();
        let m = IlpModel::new(&g, 2).unwrap();
        assert_eq!(m.arcs.len(), 3);
        assert_eq!(Some(m.stats()), expected_stats(&g, 2));
        assert!(verify_assignment(&g, 2, &Sequence::new(vec![0, 1, 1, 0])).unwrap());
        assert!(verify_assignment(&g, 2, &Sequence::new(vec![1, 0, 1, 1])).unwrap());
        assert!(!verify_assignment(&g, 2, &Sequence::new(vec![0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn emission_is_deterministic_and_sanitized() {
        let mut g = SeqGraph::with_labels(vec!["a-b".into(), "a.b".into()], true, true).unwrap();
        g.add_weighted_edge(0, 1, 1).unwrap();
        let lp = emit(&g, 2).unwrap();
        assert_eq!(lp, emit(&g, 2).unwrap());
        assert!(lp.contains("x_v0_1"));
    }
}
