//! Solution matrices of a type-A Cartan matrix.
//!
//! A rational `r x r` matrix `A` with nonzero diagonal is a solution matrix of
//! `N` when its column-normalized form `A'_ij = A_ij / A_jj` has unit
//! diagonal, off-diagonal entries in `{0, -1}`, satisfies
//! `A'_ij + A'_ji = n(j,i)`, and has at most one `-1` in any row or column.
//! Normalized solution matrices correspond to the two orientations of a path
//! or cycle diagram (one for the 1-vertex and doubled-edge cases).

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanKind, Gcm};
use crate::error::SolutionError;
use crate::scalar::{format_scalar, int, Scalar, ScalarMatrix};

/// Which way the diagram is oriented by `A'`, relative to
/// [`CartanType::traversal`](crate::cartan::CartanType::traversal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `A'` has `-1` at (t_k, t_(k+1)) along the traversal; sign `+1`.
    Forward,
    /// The transpose orientation; sign `-1`.
    Backward,
    /// `A_1` and `A^(1)_1`: a single normalized matrix.
    Symmetric,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Forward | Orientation::Symmetric => 1,
            Orientation::Backward => -1,
        }
    }

    fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
            Orientation::Symmetric => Orientation::Symmetric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionMatrix {
    a: ScalarMatrix,
    normalized: ScalarMatrix,
    diag: Vec<Scalar>,
    incidence: BTreeSet<(usize, usize)>,
    orientation: Option<Orientation>,
}

impl SolutionMatrix {
    /// Builds the matrix if it satisfies all solution-matrix conditions for `n`,
    /// reporting the first violated one otherwise.
    pub fn validate(n: &Gcm, a: ScalarMatrix) -> Result<Self, SolutionError> {
        let r = n.rank();
        if a.len() != r {
            return Err(SolutionError::DimensionMismatch {
                expected: r,
                got: a.len(),
            });
        }
        if let Some(row) = a.iter().find(|row| row.len() != r) {
            return Err(SolutionError::DimensionMismatch {
                expected: r,
                got: row.len(),
            });
        }
        for i in 0..r {
            if a[i][i].is_zero() {
                return Err(SolutionError::ZeroDiagonal(i + 1));
            }
        }
        let norm = normalize(&a);
        let minus_one = -Scalar::one();
        for i in 0..r {
            for j in 0..r {
                if i != j && !norm[i][j].is_zero() && norm[i][j] != minus_one {
                    return Err(SolutionError::BadNormalizedEntry(i + 1, j + 1));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if i != j && &norm[i][j] + &norm[j][i] != int(n.get(j, i)) {
                    let (p, q) = (i.min(j), i.max(j));
                    return Err(SolutionError::SumMismatch(p + 1, q + 1));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if i == j || norm[i][j] != minus_one {
                    continue;
                }
                let row_clash = (0..r).find(|&k| k != i && k != j && norm[i][k] == minus_one);
                let col_clash = (0..r).find(|&k| k != i && k != j && norm[k][j] == minus_one);
                if let Some(k) = row_clash.or(col_clash) {
                    return Err(SolutionError::ExclusionViolated(i + 1, j + 1, k + 1));
                }
            }
        }
        let orientation = orientation_of(n, &norm);
        Ok(Self::assemble(a, norm, orientation))
    }

    fn assemble(
        a: ScalarMatrix,
        normalized: ScalarMatrix,
        orientation: Option<Orientation>,
    ) -> Self {
        let r = a.len();
        let diag = (0..r).map(|i| a[i][i].clone()).collect();
        let minus_one = -Scalar::one();
        let incidence = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && normalized[j][i] == minus_one)
            .collect();
        SolutionMatrix {
            a,
            normalized,
            diag,
            incidence,
            orientation,
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// Entries `A_ij` (0-based).
    pub fn matrix(&self) -> &ScalarMatrix {
        &self.a
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.a[i][j]
    }

    /// `A'_ij = A_ij / A_jj`.
    pub fn normalized(&self) -> &ScalarMatrix {
        &self.normalized
    }

    pub fn diag(&self) -> &[Scalar] {
        &self.diag
    }

    /// `I^A = {(i, j) : A_ji / A_ii = -1}`, 0-based pairs.
    pub fn incidence(&self) -> &BTreeSet<(usize, usize)> {
        &self.incidence
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.orientation
    }

    /// The normalized solution matrix `A'` as a solution matrix.
    pub fn normalized_matrix(&self) -> SolutionMatrix {
        Self::assemble(
            self.normalized.clone(),
            self.normalized.clone(),
            self.orientation,
        )
    }

    /// Column scaling `A_ij -> d_j A_ij`.
    pub fn scale(&self, d: &[Scalar]) -> Result<SolutionMatrix, SolutionError> {
        let r = self.rank();
        if d.len() != r {
            return Err(SolutionError::DimensionMismatch {
                expected: r,
                got: d.len(),
            });
        }
        if let Some(j) = d.iter().position(Zero::is_zero) {
            return Err(SolutionError::ZeroScale(j + 1));
        }
        let a = self
            .a
            .iter()
            .map(|row| row.iter().zip(d).map(|(x, dj)| x * dj).collect())
            .collect();
        Ok(Self::assemble(a, self.normalized.clone(), self.orientation))
    }

    /// The involution exchanging the two orientations.
    ///
    /// `A_ij -> A_ji / (A_ii A_jj)`: on normalized matrices this is the
    /// transpose, and on the constant fields it sends `(delta_i, delta_-i)` to
    /// `(-delta_-i, -delta_i)`. The normalized form is transposed and the
    /// diagonal inverted.
    pub fn transpose_involution(&self) -> SolutionMatrix {
        let r = self.rank();
        let a: ScalarMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| &self.a[j][i] / (&self.a[i][i] * &self.a[j][j]))
                    .collect()
            })
            .collect();
        let normalized = normalize(&a);
        Self::assemble(a, normalized, self.orientation.map(Orientation::flipped))
    }

    pub fn to_json(&self) -> SolutionMatrixJson {
        let fmt = |m: &ScalarMatrix| -> Vec<Vec<String>> {
            m.iter()
                .map(|row| row.iter().map(format_scalar).collect())
                .collect()
        };
        SolutionMatrixJson {
            matrix: fmt(&self.a),
            normalized: fmt(&self.normalized),
            diag: self.diag.iter().map(format_scalar).collect(),
            incidence: self
                .incidence
                .iter()
                .map(|&(i, j)| [i + 1, j + 1])
                .collect(),
            orientation: self.orientation,
        }
    }
}

impl Serialize for SolutionMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// JSON form; indices in `incidence` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionMatrixJson {
    pub matrix: Vec<Vec<String>>,
    pub normalized: Vec<Vec<String>>,
    pub diag: Vec<String>,
    pub incidence: Vec<[usize; 2]>,
    #[serde(default)]
    pub orientation: Option<Orientation>,
}

fn normalize(a: &ScalarMatrix) -> ScalarMatrix {
    let r = a.len();
    (0..r)
        .map(|i| (0..r).map(|j| &a[i][j] / &a[j][j]).collect())
        .collect()
}

fn orientation_of(n: &Gcm, norm: &ScalarMatrix) -> Option<Orientation> {
    let ty = n.classify().ok()?;
    match ty.kind {
        CartanKind::FiniteA(1) | CartanKind::AffineA(1) => Some(Orientation::Symmetric),
        CartanKind::FiniteA(_) | CartanKind::AffineA(_) => {
            let t = ty.traversal?;
            if norm[t[0]][t[1]] == -Scalar::one() {
                Some(Orientation::Forward)
            } else {
                Some(Orientation::Backward)
            }
        }
        CartanKind::Other => None,
    }
}

/// All normalized solution matrices of an indecomposable `n`, in the input
/// labelling. Forward orientation first.
pub fn normalized_solution_matrices(n: &Gcm) -> Result<Vec<SolutionMatrix>, SolutionError> {
    let ty = n.classify()?;
    let r = n.rank();
    let oriented = |order: &[usize], cyclic: bool| -> ScalarMatrix {
        let mut m = identity(r);
        let steps = if cyclic { order.len() } else { order.len() - 1 };
        for k in 0..steps {
            let (a, b) = (order[k], order[(k + 1) % order.len()]);
            m[a][b] = int(-1);
        }
        m
    };
    let candidates: Vec<ScalarMatrix> = match ty.kind {
        CartanKind::Other => Vec::new(),
        CartanKind::FiniteA(1) => vec![identity(1)],
        CartanKind::AffineA(1) => vec![vec![vec![int(1), int(-1)], vec![int(-1), int(1)]]],
        CartanKind::FiniteA(_) | CartanKind::AffineA(_) => {
            let cyclic = ty.is_affine();
            let t = ty.traversal.clone().expect("type A has a traversal");
            let mut rev = t.clone();
            if cyclic {
                // same cycle, opposite direction, still starting at t[0]
                rev[1..].reverse();
            } else {
                rev.reverse();
            }
            vec![oriented(&t, cyclic), oriented(&rev, cyclic)]
        }
    };
    candidates
        .into_iter()
        .map(|m| SolutionMatrix::validate(n, m))
        .collect()
}

fn identity(r: usize) -> ScalarMatrix {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect()
        })
        .collect()
}
