//! Generalized Cartan matrices and the type-A classification.
//!
//! Only the distinction needed downstream is made: a connected Dynkin diagram
//! is either a simple path with single lines ([`CartanKind::FiniteA`]), a
//! simple cycle or the doubled 2-node edge ([`CartanKind::AffineA`]), or
//! anything else ([`CartanKind::Other`]).

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CartanError, ParseError};
use crate::linalg::rank_fraction_free;

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Gcm {
    entries: Vec<Vec<i64>>,
    corank: usize,
}

impl Gcm {
    /// Checks the three axioms and computes the corank exactly.
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let r = m.len();
        if r == 0 {
            return Err(CartanError::Empty);
        }
        if m.iter().any(|row| row.len() != r) {
            return Err(CartanError::NotSquare);
        }
        for i in 0..r {
            if m[i][i] != 2 {
                return Err(CartanError::DiagonalNotTwo(i + 1));
            }
        }
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                if m[i][j] > 0 {
                    return Err(CartanError::PositiveOffDiagonal(i + 1, j + 1));
                }
                if m[i][j] == 0 && m[j][i] != 0 {
                    return Err(CartanError::ZeroPatternAsymmetric(i + 1, j + 1));
                }
            }
        }
        let corank = r - rank_fraction_free(&m);
        Ok(Gcm { entries: m, corank })
    }

    /// Number of rows `r`.
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `s = r - rank(N)`.
    pub fn corank(&self) -> usize {
        self.corank
    }

    /// `n(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Connected components of the graph with edges `{i, j : n(i,j) != 0}`,
    /// each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let r = self.rank();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..r {
                    if w != v && !seen[w] && self.entries[v][w] != 0 {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components().len() == 1
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Gcm {
        let m = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        Gcm::new(m).expect("principal submatrix of a GCM is a GCM")
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// `n(perm[i], perm[j])`.
    pub fn permuted(&self, perm: &[usize]) -> Gcm {
        self.submatrix(perm)
    }

    pub fn diagram(&self) -> DynkinDiagram {
        let r = self.rank();
        let mut edges = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                if self.entries[i][j] != 0 {
                    edges.push(DynkinEdge {
                        i,
                        j,
                        n_ij: self.entries[i][j],
                        n_ji: self.entries[j][i],
                    });
                }
            }
        }
        DynkinDiagram { vertices: r, edges }
    }

    pub fn classify(&self) -> Result<CartanType, CartanError> {
        if !self.is_indecomposable() {
            return Err(CartanError::Decomposable);
        }
        let diagram = self.diagram();
        let r = self.rank();
        let other = |diagram| CartanType {
            kind: CartanKind::Other,
            diagram,
            traversal: None,
        };
        let allowed = diagram
            .edges
            .iter()
            .all(|e| e.n_ij == e.n_ji && (e.n_ij == -1 || e.n_ij == -2));
        if !allowed {
            return Ok(other(diagram));
        }
        if diagram.edges.iter().any(|e| e.n_ij == -2) {
            if r == 2 {
                return Ok(CartanType {
                    kind: CartanKind::AffineA(1),
                    diagram,
                    traversal: Some(vec![0, 1]),
                });
            }
            return Ok(other(diagram));
        }
        if r == 1 {
            return Ok(CartanType {
                kind: CartanKind::FiniteA(1),
                diagram,
                traversal: Some(vec![0]),
            });
        }
        let degrees: Vec<usize> = (0..r).map(|v| diagram.neighbors(v).len()).collect();
        if degrees.iter().any(|&d| d > 2) {
            return Ok(other(diagram));
        }
        // Connected with max degree 2: a path if it has r-1 edges, a cycle if r.
        if diagram.edges.len() == r - 1 {
            let start = (0..r)
                .find(|&v| degrees[v] == 1)
                .expect("path has an endpoint");
            let traversal = diagram.walk(start, None);
            return Ok(CartanType {
                kind: CartanKind::FiniteA(r),
                diagram,
                traversal: Some(traversal),
            });
        }
        if diagram.edges.len() == r && r >= 3 {
            let first = *diagram.neighbors(0).iter().min().unwrap();
            let traversal = diagram.walk(0, Some(first));
            return Ok(CartanType {
                kind: CartanKind::AffineA(r - 1),
                diagram,
                traversal: Some(traversal),
            });
        }
        Ok(other(diagram))
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanKind {
    /// `A_r`, carrying `r`.
    FiniteA(usize),
    /// `A^(1)_k` on `k + 1` vertices, carrying `k`.
    AffineA(usize),
    Other,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanKind::FiniteA(r) => write!(f, "A_{r}"),
            CartanKind::AffineA(k) => write!(f, "A^(1)_{k}"),
            CartanKind::Other => f.write_str("Other"),
        }
    }
}

/// Classification result with the diagram it was read off.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanType {
    pub kind: CartanKind,
    pub diagram: DynkinDiagram,
    /// Vertex order along the path (from the lower-labelled end) or around
    /// the cycle (from vertex 0 towards its lower-labelled neighbour). `None`
    /// for [`CartanKind::Other`].
    pub traversal: Option<Vec<usize>>,
}

impl CartanType {
    pub fn is_type_a(&self) -> bool {
        !matches!(self.kind, CartanKind::Other)
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.kind, CartanKind::AffineA(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinEdge {
    pub i: usize,
    pub j: usize,
    pub n_ij: i64,
    pub n_ji: i64,
}

impl DynkinEdge {
    /// Number of lines joining the two vertices.
    pub fn multiplicity(&self) -> i64 {
        self.n_ij * self.n_ji
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DynkinDiagram {
    pub vertices: usize,
    pub edges: Vec<DynkinEdge>,
}

impl DynkinDiagram {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|e| {
                if e.i == v {
                    Some(e.j)
                } else if e.j == v {
                    Some(e.i)
                } else {
                    None
                }
            })
            .collect()
    }

    // Walks a path or cycle of max degree 2.
    fn walk(&self, start: usize, first: Option<usize>) -> Vec<usize> {
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = match first.or_else(|| self.neighbors(start).first().copied()) {
            Some(c) => c,
            None => return order,
        };
        while cur != start {
            order.push(cur);
            let next = self.neighbors(cur).into_iter().find(|&w| w != prev);
            match next {
                Some(n) => {
                    prev = cur;
                    cur = n;
                }
                None => break,
            }
        }
        order
    }
}

/// Parses an integer matrix given as JSON (`[[2,-1],[-1,2]]`) or as
/// whitespace-separated rows, one per line (`;` also separates rows).
pub fn parse_int_matrix(text: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| ParseError::Matrix(e.to_string()));
    }
    let rows: Vec<Vec<i64>> = t
        .split(['\n', ';'])
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| ParseError::Matrix(format!("bad entry `{s}`")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.is_empty() {
        return Err(ParseError::Matrix("no rows".into()));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcm(m: &[&[i64]]) -> Gcm {
        Gcm::new(m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let a2 = gcm(&[&[2, -1], &[-1, 2]]);
        assert_eq!((a2.rank(), a2.corank()), (2, 0));
        let a1 = gcm(&[&[2]]);
        assert_eq!((a1.rank(), a1.corank()), (1, 0));
        let aff = gcm(&[&[2, -2], &[-2, 2]]);
        assert_eq!((aff.rank(), aff.corank()), (2, 1));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(Gcm::new(vec![vec![2, -1]]), Err(CartanError::NotSquare));
        assert_eq!(Gcm::new(vec![]), Err(CartanError::Empty));
        assert_eq!(
            Gcm::new(vec![vec![2, -1], vec![-1, 3]]),
            Err(CartanError::DiagonalNotTwo(2))
        );
        assert_eq!(
            Gcm::new(vec![vec![2, 1], vec![1, 2]]),
            Err(CartanError::PositiveOffDiagonal(1, 2))
        );
        assert_eq!(
            Gcm::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(CartanError::ZeroPatternAsymmetric(1, 2))
        );
    }

    #[test]
    fn indecomposability() {
        assert!(gcm(&[&[2, -1], &[-1, 2]]).is_indecomposable());
        assert!(!gcm(&[&[2, 0], &[0, 2]]).is_indecomposable());
        assert!(gcm(&[&[2, -2], &[-2, 2]]).is_indecomposable());
        let blocks = gcm(&[&[2, 0, -1], &[0, 2, 0], &[-1, 0, 2]]);
        assert_eq!(blocks.components(), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn classify_examples() {
        let a3 = gcm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a3.classify().unwrap().kind, CartanKind::FiniteA(3));
        let aff = gcm(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(aff.classify().unwrap().kind, CartanKind::AffineA(2));
        let g2 = gcm(&[&[2, -1], &[-3, 2]]);
        assert_eq!(g2.classify().unwrap().kind, CartanKind::Other);
        assert_eq!(
            gcm(&[&[2, 0], &[0, 2]]).classify(),
            Err(CartanError::Decomposable)
        );
        assert_eq!(
            gcm(&[&[2, -2], &[-2, 2]]).classify().unwrap().kind,
            CartanKind::AffineA(1)
        );
        assert_eq!(
            gcm(&[&[2]]).classify().unwrap().kind,
            CartanKind::FiniteA(1)
        );
    }

    #[test]
    fn traversal_orders() {
        // path 2 - 0 - 1 (0-based), endpoints 1 and 2
        let p = gcm(&[&[2, -1, -1], &[-1, 2, 0], &[-1, 0, 2]]);
        let t = p.classify().unwrap();
        assert_eq!(t.kind, CartanKind::FiniteA(3));
        assert_eq!(t.traversal, Some(vec![1, 0, 2]));
        // cycle 0 - 2 - 1 - 3 - 0
        let c = gcm(&[
            &[2, 0, -1, -1],
            &[0, 2, -1, -1],
            &[-1, -1, 2, 0],
            &[-1, -1, 0, 2],
        ]);
        let t = c.classify().unwrap();
        assert_eq!(t.kind, CartanKind::AffineA(3));
        assert_eq!(t.traversal, Some(vec![0, 2, 1, 3]));
    }

    #[test]
    fn multiplicities_and_star() {
        let g2 = gcm(&[&[2, -1], &[-3, 2]]);
        assert_eq!(g2.diagram().edges[0].multiplicity(), 3);
        let d4 = gcm(&[
            &[2, -1, 0, 0],
            &[-1, 2, -1, -1],
            &[0, -1, 2, 0],
            &[0, -1, 0, 2],
        ]);
        assert_eq!(d4.classify().unwrap().kind, CartanKind::Other);
        // a triangle plus a pendant vertex: degrees fine except one of 3
        let k = gcm(&[
            &[2, -1, -1, 0],
            &[-1, 2, -1, 0],
            &[-1, -1, 2, -1],
            &[0, 0, -1, 2],
        ]);
        assert_eq!(k.classify().unwrap().kind, CartanKind::Other);
    }

    #[test]
    fn parse_matrices() {
        assert_eq!(
            parse_int_matrix("[[2,-1],[-1,2]]").unwrap(),
            vec![vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(
            parse_int_matrix(" 2 -1\n-1  2\n").unwrap(),
            vec![vec![2, -1], vec![-1, 2]]
        );
        assert_eq!(
            parse_int_matrix("2 -2; -2 2").unwrap(),
            vec![vec![2, -2], vec![-2, 2]]
        );
        assert!(parse_int_matrix("2 x").is_err());
        assert!(parse_int_matrix("[[2,").is_err());
    }
}
