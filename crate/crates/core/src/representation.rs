//! Vector-field representations attached to a solution matrix.
//!
//! With `D_j = z_j d/dz_j`, a solution matrix `A` and nonzero integers
//! `n_1..n_r`, the Chevalley generators map to
//!
//! ```text
//! H_a    -> sum_j alpha_j(H_a) D_j / n_j
//! X_i    -> z_i^{n_i}  sum_j A_ji D_j / n_j
//! X_-i   -> -z_i^{-n_i} / A_ii  sum_j (A_ij / A_jj) D_j / n_j
//! ```
//!
//! [`verify_relations`] checks every defining relation symbolically.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanKind, Gcm};
use crate::error::{RepresentationError, SolutionError};
use crate::laurent::{LaurentPoly, Monomial};
use crate::linalg::{nullspace, rank, solve};
use crate::scalar::{int, int_matrix_to_scalar, transpose, Scalar, ScalarMatrix};
use crate::solution::SolutionMatrix;
use crate::vectorfield::Derivation;

/// The Cartan subalgebra data: the values `alpha_j(H_a)` on the full
/// `(r+s)`-dimensional Cartan subalgebra and a dual basis of the roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    gcm: Gcm,
    kind: CartanKind,
    alpha: ScalarMatrix,
    primed: ScalarMatrix,
    affine_node: Option<usize>,
}

impl CartanData {
    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    /// Number of simple roots `r`.
    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    /// Dimension `r + s` of the Cartan subalgebra.
    pub fn cartan_dim(&self) -> usize {
        self.alpha.len()
    }

    /// `alpha[a][j] = alpha_j(H_a)`; rows `r..r+s` are the extension generators.
    pub fn alpha(&self) -> &ScalarMatrix {
        &self.alpha
    }

    /// Coefficients over `H_1..H_(r+s)` of elements `H'_j` with
    /// `alpha_i(H'_j) = delta_ij`.
    pub fn primed(&self) -> &ScalarMatrix {
        &self.primed
    }

    /// The vertex playing the role of the affine node (always vertex 0).
    pub fn affine_node(&self) -> Option<usize> {
        self.affine_node
    }

    /// Basis of the centre `Z`, as coefficient vectors over `H_1..H_(r+s)`.
    pub fn centre(&self) -> ScalarMatrix {
        nullspace(&transpose(&self.alpha))
    }
}

/// Builds the Cartan data for `A_r` (where `alpha` is `N` itself) or
/// `A^(1)_(r-1)` (where one generator `d` with `alpha_j(d) = delta_(j,0)` is
/// appended).
pub fn build_cartan_data(n: &Gcm) -> Result<CartanData, RepresentationError> {
    let ty = n.classify()?;
    let r = n.rank();
    let mut alpha = int_matrix_to_scalar(n.entries());
    let affine_node = match ty.kind {
        CartanKind::FiniteA(_) => None,
        CartanKind::AffineA(_) => {
            let node = ty.traversal.as_ref().map_or(0, |t| t[0]);
            let mut d = vec![Scalar::zero(); r];
            d[node] = Scalar::one();
            alpha.push(d);
            Some(node)
        }
        CartanKind::Other => {
            return Err(RepresentationError::UnsupportedType(ty.kind.to_string()));
        }
    };
    debug_assert_eq!(alpha.len(), r + n.corank());
    let at = transpose(&alpha);
    if rank(&at) != r {
        return Err(RepresentationError::Malformed(
            "simple roots are not linearly independent".into(),
        ));
    }
    let primed = (0..r)
        .map(|j| {
            let mut e = vec![Scalar::zero(); r];
            e[j] = Scalar::one();
            solve(&at, &e).expect("roots are independent, so the dual basis exists")
        })
        .collect();
    Ok(CartanData {
        gcm: n.clone(),
        kind: ty.kind,
        alpha,
        primed,
        affine_node,
    })
}

/// The constant fields `(delta_1..delta_r, delta_-1..delta_-r)` of the
/// unscaled family: `delta_i = sum_j A_ji D_j` and
/// `delta_-i = -sum_j A_ij / (A_ii A_jj) D_j`.
pub fn build_deltas(a: &SolutionMatrix) -> (Vec<Derivation>, Vec<Derivation>) {
    deltas_scaled(a.matrix(), &vec![1; a.rank()])
}

fn deltas_scaled(a: &ScalarMatrix, n: &[i64]) -> (Vec<Derivation>, Vec<Derivation>) {
    let r = a.len();
    let inv_n: Vec<Scalar> = n.iter().map(|&k| int(k).recip()).collect();
    let plus = (0..r)
        .map(|i| {
            let c: Vec<Scalar> = (0..r).map(|j| &a[j][i] * &inv_n[j]).collect();
            Derivation::constant(&c)
        })
        .collect();
    let minus = (0..r)
        .map(|i| {
            let c: Vec<Scalar> = (0..r)
                .map(|j| -(&a[i][j] / (&a[i][i] * &a[j][j])) * &inv_n[j])
                .collect();
            Derivation::constant(&c)
        })
        .collect();
    (plus, minus)
}

/// `delta_-i` recomputed from `delta_i` and `F(H_i)`:
/// `delta_-i = (1/A_ii) (-F(H_i) + delta_i / A_ii)`.
pub fn minus_deltas_from_coroots(cd: &CartanData, a: &SolutionMatrix) -> Vec<Derivation> {
    let (plus, _) = build_deltas(a);
    (0..cd.rank())
        .map(|i| {
            let aii = a.get(i, i);
            let h = Derivation::constant(&cd.alpha[i]);
            (&plus[i].scale(&aii.recip()) - &h).scale(&aii.recip())
        })
        .collect()
}

/// Images of the Chevalley generators in `Der(L_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    cartan: CartanData,
    matrix: ScalarMatrix,
    solution: Option<SolutionMatrix>,
    n: Vec<i64>,
    h_images: Vec<Derivation>,
    x_plus: Vec<Derivation>,
    x_minus: Vec<Derivation>,
    delta_plus: Vec<Derivation>,
    delta_minus: Vec<Derivation>,
}

/// Builds `F^A_{n_1..n_r}`. `A` is re-validated against the Cartan matrix.
pub fn build_representation(
    cd: &CartanData,
    a: &SolutionMatrix,
    n: &[i64],
) -> Result<Representation, RepresentationError> {
    let checked = SolutionMatrix::validate(cd.gcm(), a.matrix().clone())?;
    let mut rep = build_from_matrix(cd, a.matrix(), n)?;
    rep.solution = Some(checked);
    Ok(rep)
}

/// Same formulas for an arbitrary matrix with nonzero diagonal; used to
/// exhibit relation failures for matrices that are not solution matrices.
pub fn build_from_matrix(
    cd: &CartanData,
    a: &ScalarMatrix,
    n: &[i64],
) -> Result<Representation, RepresentationError> {
    let r = cd.rank();
    if n.len() != r {
        return Err(RepresentationError::DimensionMismatch {
            expected: r,
            got: n.len(),
        });
    }
    if a.len() != r || a.iter().any(|row| row.len() != r) {
        return Err(SolutionError::DimensionMismatch {
            expected: r,
            got: a.len(),
        }
        .into());
    }
    if let Some(i) = n.iter().position(|&k| k == 0) {
        return Err(RepresentationError::ZeroIndex(i + 1));
    }
    if let Some(i) = (0..r).find(|&i| a[i][i].is_zero()) {
        return Err(SolutionError::ZeroDiagonal(i + 1).into());
    }
    let inv_n: Vec<Scalar> = n.iter().map(|&k| int(k).recip()).collect();
    let h_images = cd
        .alpha
        .iter()
        .map(|row| {
            let c: Vec<Scalar> = row.iter().zip(&inv_n).map(|(x, y)| x * y).collect();
            Derivation::constant(&c)
        })
        .collect();
    let (delta_plus, delta_minus) = deltas_scaled(a, n);
    let x_plus = (0..r)
        .map(|i| delta_plus[i].mul_poly(&z_power(r, i, n[i])))
        .collect::<Result<Vec<_>, _>>()?;
    let x_minus = (0..r)
        .map(|i| delta_minus[i].mul_poly(&z_power(r, i, -n[i])))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Representation {
        cartan: cd.clone(),
        matrix: a.clone(),
        solution: None,
        n: n.to_vec(),
        h_images,
        x_plus,
        x_minus,
        delta_plus,
        delta_minus,
    })
}

fn z_power(rank: usize, i: usize, e: i64) -> LaurentPoly {
    LaurentPoly::term(Monomial::var(rank, i, e), Scalar::one())
}

/// Rescaled Cartan images computed through the dual basis instead of the
/// closed formula: decompose `H_a` over `{H'_j} + Z`, send `H'_j` to
/// `F(H'_j) / n_j` and the centre to zero.
pub fn rescaled_cartan_images_via_dual_basis(
    cd: &CartanData,
    n: &[i64],
) -> Result<Vec<Derivation>, RepresentationError> {
    let r = cd.rank();
    let dim = cd.cartan_dim();
    if n.len() != r {
        return Err(RepresentationError::DimensionMismatch {
            expected: r,
            got: n.len(),
        });
    }
    if let Some(i) = n.iter().position(|&k| k == 0) {
        return Err(RepresentationError::ZeroIndex(i + 1));
    }
    let unscaled = |c: &[Scalar]| -> Derivation {
        let coeffs: Vec<Scalar> = (0..r)
            .map(|k| (0..dim).map(|a| &c[a] * &cd.alpha[a][k]).sum())
            .collect();
        Derivation::constant(&coeffs)
    };
    let primed_images: Vec<Derivation> = cd
        .primed
        .iter()
        .zip(n)
        .map(|(c, &nj)| unscaled(c).scale(&int(nj).recip()))
        .collect();
    let mut basis_cols = cd.primed.clone();
    basis_cols.extend(cd.centre());
    let basis = transpose(&basis_cols);
    (0..dim)
        .map(|a| {
            let mut e = vec![Scalar::zero(); dim];
            e[a] = Scalar::one();
            let x = solve(&basis, &e).ok_or_else(|| {
                RepresentationError::Malformed("dual basis plus centre does not span".into())
            })?;
            let mut acc = Derivation::zero(r);
            for (j, img) in primed_images.iter().enumerate() {
                acc = &acc + &img.scale(&x[j]);
            }
            Ok(acc)
        })
        .collect()
}

impl Representation {
    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn n(&self) -> &[i64] {
        &self.n
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.matrix
    }

    /// The validated solution matrix, absent for [`build_from_matrix`] output.
    pub fn solution(&self) -> Option<&SolutionMatrix> {
        self.solution.as_ref()
    }

    /// `F(H_a)` for `a < r + s`.
    pub fn h(&self, a: usize) -> &Derivation {
        &self.h_images[a]
    }

    pub fn h_images(&self) -> &[Derivation] {
        &self.h_images
    }

    pub fn x(&self, i: usize) -> &Derivation {
        &self.x_plus[i]
    }

    pub fn x_minus(&self, i: usize) -> &Derivation {
        &self.x_minus[i]
    }

    pub fn x_plus_all(&self) -> &[Derivation] {
        &self.x_plus
    }

    pub fn x_minus_all(&self) -> &[Derivation] {
        &self.x_minus
    }

    /// Rescaled constant fields `delta_i^(n)` with `F(X_i) = z_i^{n_i} delta_i^(n)`.
    pub fn delta_plus(&self) -> &[Derivation] {
        &self.delta_plus
    }

    pub fn delta_minus(&self) -> &[Derivation] {
        &self.delta_minus
    }

    /// `F(d)` for affine types.
    pub fn degree_derivation(&self) -> Option<&Derivation> {
        self.cartan.affine_node.map(|_| &self.h_images[self.rank()])
    }

    /// `(name, image)` for every generator, `H`s first then `X`s then `X_-`s.
    /// Names use 1-based labels; the extension generator is `d`.
    pub fn generators(&self) -> Vec<(String, &Derivation)> {
        let r = self.rank();
        let mut out = Vec::new();
        for (a, h) in self.h_images.iter().enumerate() {
            let name = if a < r {
                format!("H{}", a + 1)
            } else {
                "d".to_string()
            };
            out.push((name, h));
        }
        for (i, x) in self.x_plus.iter().enumerate() {
            out.push((format!("X{}", i + 1), x));
        }
        for (i, x) in self.x_minus.iter().enumerate() {
            out.push((format!("X-{}", i + 1), x));
        }
        out
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            cartan_matrix: self.cartan.gcm.entries().to_vec(),
            kind: self.cartan.kind,
            n: self.n.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            solution: self.solution.as_ref().map(SolutionMatrix::to_json),
            generators: self
                .generators()
                .into_iter()
                .map(|(name, d)| (name, d.to_strings()))
                .collect(),
        }
    }

    /// Rebuilds a representation from its JSON form, keeping the generator
    /// images exactly as given (they are not recomputed).
    pub fn from_json(j: &RepresentationJson) -> Result<Self, RepresentationError> {
        let gcm = Gcm::new(j.cartan_matrix.clone())?;
        let cartan = build_cartan_data(&gcm)?;
        let r = cartan.rank();
        let matrix = j
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| crate::scalar::parse_scalar(s)).collect())
            .collect::<Result<ScalarMatrix, _>>()?;
        let solution = match &j.solution {
            Some(_) => Some(SolutionMatrix::validate(&gcm, matrix.clone())?),
            None => None,
        };
        if j.n.len() != r {
            return Err(RepresentationError::DimensionMismatch {
                expected: r,
                got: j.n.len(),
            });
        }
        if let Some(i) = j.n.iter().position(|&k| k == 0) {
            return Err(RepresentationError::ZeroIndex(i + 1));
        }
        let get = |name: &str| -> Result<Derivation, RepresentationError> {
            let coords = j
                .generators
                .iter()
                .find(|(k, _)| k == name)
                .map(|(_, v)| v)
                .ok_or_else(|| {
                    RepresentationError::Malformed(format!("missing generator {name}"))
                })?;
            if coords.len() != r {
                return Err(RepresentationError::DimensionMismatch {
                    expected: r,
                    got: coords.len(),
                });
            }
            Ok(Derivation::parse_coords(coords)?)
        };
        let mut h_images = (0..r)
            .map(|a| get(&format!("H{}", a + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if cartan.affine_node.is_some() {
            h_images.push(get("d")?);
        }
        let x_plus = (0..r)
            .map(|i| get(&format!("X{}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let x_minus = (0..r)
            .map(|i| get(&format!("X-{}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let delta_plus = (0..r)
            .map(|i| x_plus[i].mul_poly(&z_power(r, i, -j.n[i])))
            .collect::<Result<Vec<_>, _>>()?;
        let delta_minus = (0..r)
            .map(|i| x_minus[i].mul_poly(&z_power(r, i, j.n[i])))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Representation {
            cartan,
            matrix,
            solution,
            n: j.n.clone(),
            h_images,
            x_plus,
            x_minus,
            delta_plus,
            delta_minus,
        })
    }
}

/// Serialized representation. Generator coordinates are Laurent text strings
/// in the `D_j` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub cartan_matrix: Vec<Vec<i64>>,
    pub kind: CartanKind,
    pub n: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub solution: Option<crate::solution::SolutionMatrixJson>,
    #[serde(with = "generator_map")]
    pub generators: Vec<(String, Vec<String>)>,
}

mod generator_map {
    use serde::de::{MapAccess, Visitor};
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &[(String, Vec<String>)], s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(v.len()))?;
        for (k, coords) in v {
            m.serialize_entry(k, coords)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(String, Vec<String>)>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<(String, Vec<String>)>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from generator names to coordinate lists")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry()? {
                    out.push(entry);
                }
                Ok(out)
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Relation::A => 'a',
            Relation::B => 'b',
            Relation::C => 'c',
            Relation::D => 'd',
            Relation::E => 'e',
        };
        write!(f, "({c})")
    }
}

/// One checked instance of a defining relation. `indices` are 1-based; the
/// residual is `lhs - rhs` and is kept only on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: Relation,
    pub indices: Vec<usize>,
    pub passed: bool,
    pub residual: Option<Derivation>,
}

impl Serialize for RelationCheck {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RelationCheck", 4)?;
        st.serialize_field("relation", &self.relation.to_string())?;
        st.serialize_field("indices", &self.indices)?;
        st.serialize_field("passed", &self.passed)?;
        st.serialize_field(
            "residual",
            &self.residual.as_ref().map(Derivation::to_strings),
        )?;
        st.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// `(passed, total)` for one relation family.
    pub fn tally(&self, rel: Relation) -> (usize, usize) {
        let of: Vec<_> = self.checks.iter().filter(|c| c.relation == rel).collect();
        (of.iter().filter(|c| c.passed).count(), of.len())
    }

    fn push(&mut self, relation: Relation, indices: Vec<usize>, residual: Derivation) {
        let passed = residual.is_zero();
        self.checks.push(RelationCheck {
            relation,
            indices,
            passed,
            residual: (!passed).then_some(residual),
        });
    }
}

/// Weight of a monomial field under a constant field: `F(H)(z^m) / z^m`.
fn weight_under(h: &Derivation, x: &Derivation) -> Option<Scalar> {
    let (m, _) = x.as_monomial_field()?;
    let coeffs = h.constant_coeffs()?;
    Some(crate::vectorfield::pair(m.exps(), &coeffs))
}

/// Checks relations (a)-(e) on the stored generator images.
pub fn verify_relations(rep: &Representation) -> RelationReport {
    let r = rep.rank();
    let dim = rep.h_images.len();
    let gcm = rep.cartan.gcm();
    let mut report = RelationReport::default();
    let br = |x: &Derivation, y: &Derivation| x.bracket(y).expect("generators share a rank");

    for a in 0..dim {
        for b in a + 1..dim {
            report.push(
                Relation::A,
                vec![a + 1, b + 1],
                br(&rep.h_images[a], &rep.h_images[b]),
            );
        }
    }
    for i in 0..r {
        for j in 0..r {
            let lhs = br(&rep.x_plus[i], &rep.x_minus[j]);
            let res = if i == j { &lhs - &rep.h_images[i] } else { lhs };
            report.push(Relation::B, vec![i + 1, j + 1], res);
        }
    }
    for a in 0..dim {
        for j in 0..r {
            for (sign, x) in [(1, &rep.x_plus[j]), (-1, &rep.x_minus[j])] {
                let lhs = br(&rep.h_images[a], x);
                // the eigenvalue is read off the data: F(H_a) acting on the
                // monomial carried by X_{+-j}, which is +-alpha_j(H_a)
                let res = match weight_under(&rep.h_images[a], x) {
                    Some(w) => &lhs - &x.scale(&w),
                    None if x.is_zero() && lhs.is_zero() => lhs,
                    None => x.clone(),
                };
                let mut idx = vec![a + 1, j + 1];
                if sign < 0 {
                    idx.push(0);
                }
                report.push(Relation::C, idx, res);
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let k = (1 - gcm.get(i, j)) as usize;
            let d = rep.x_plus[i].ad_pow(k, &rep.x_plus[j]).expect("same rank");
            report.push(Relation::D, vec![i + 1, j + 1], d);
            let e = rep.x_minus[i]
                .ad_pow(k, &rep.x_minus[j])
                .expect("same rank");
            report.push(Relation::E, vec![i + 1, j + 1], e);
        }
    }
    report
}

/// Outcome of [`kernel_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    /// Dimension of `Ker F` restricted to the Cartan subalgebra.
    pub kernel_dim: usize,
    /// Dimension of the centre `Z` (the corank).
    pub centre_dim: usize,
    /// For affine types: whether `F(H_1 + ... + H_r) = 0`.
    pub centre_image_vanishes: Option<bool>,
    /// Whether the images `F(H'_j)` are linearly independent.
    pub dual_images_independent: bool,
}

impl KernelReport {
    /// `Ker F = Z` on the Cartan subalgebra.
    pub fn passed(&self) -> bool {
        self.kernel_dim == self.centre_dim
            && self.centre_image_vanishes.unwrap_or(true)
            && self.dual_images_independent
    }
}

pub fn kernel_check(rep: &Representation) -> KernelReport {
    let r = rep.rank();
    let images: ScalarMatrix = rep
        .h_images
        .iter()
        .map(|h| {
            h.constant_coeffs()
                .unwrap_or_else(|| vec![Scalar::zero(); r])
        })
        .collect();
    let kernel_dim = nullspace(&transpose(&images)).len();
    let centre_image_vanishes = rep.cartan.affine_node.map(|_| {
        let mut sum = Derivation::zero(r);
        for h in &rep.h_images[..r] {
            sum = &sum + h;
        }
        sum.is_zero()
    });
    let dual: ScalarMatrix = rep
        .cartan
        .primed
        .iter()
        .map(|c| {
            (0..r)
                .map(|k| c.iter().zip(&images).map(|(x, row)| x * &row[k]).sum())
                .collect()
        })
        .collect();
    KernelReport {
        kernel_dim,
        centre_dim: rep.cartan.gcm.corank(),
        centre_image_vanishes,
        dual_images_independent: rank(&dual) == r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{affine_a, finite_a};
    use crate::scalar::ratio;
    use crate::solution::normalized_solution_matrices;

    fn d(coords: &[&str]) -> Derivation {
        Derivation::parse_coords(coords).unwrap()
    }

    fn setup(m: Vec<Vec<i64>>) -> (CartanData, Vec<SolutionMatrix>) {
        let g = Gcm::new(m).unwrap();
        let cd = build_cartan_data(&g).unwrap();
        let sms = normalized_solution_matrices(&g).unwrap();
        (cd, sms)
    }

    #[test]
    fn cartan_data_examples() {
        let (cd, _) = setup(finite_a(2));
        assert_eq!(cd.primed()[0], vec![ratio(2, 3), ratio(1, 3)]);
        assert_eq!(cd.primed()[1], vec![ratio(1, 3), ratio(2, 3)]);
        let (cd, _) = setup(finite_a(1));
        assert_eq!(cd.primed(), &vec![vec![ratio(1, 2)]]);
        let (cd, _) = setup(affine_a(1));
        assert_eq!(cd.alpha().len(), 3);
        assert_eq!(cd.alpha()[2], vec![int(1), int(0)]);
        assert_eq!(cd.centre(), vec![vec![int(1), int(1), int(0)]]);
        let g2 = Gcm::new(crate::catalog::g2()).unwrap();
        assert!(matches!(
            build_cartan_data(&g2),
            Err(RepresentationError::UnsupportedType(_))
        ));
    }

    #[test]
    fn primed_basis_is_dual() {
        for m in [finite_a(3), affine_a(2), affine_a(1)] {
            let (cd, _) = setup(m);
            for (j, c) in cd.primed().iter().enumerate() {
                for i in 0..cd.rank() {
                    let v: Scalar = c.iter().zip(cd.alpha()).map(|(x, row)| x * &row[i]).sum();
                    assert_eq!(v, if i == j { int(1) } else { int(0) });
                }
            }
        }
    }

    #[test]
    fn sl2_deltas() {
        let g = Gcm::new(finite_a(1)).unwrap();
        let lam = ratio(3, 2);
        let sm = SolutionMatrix::validate(&g, vec![vec![lam.clone()]]).unwrap();
        let (p, m) = build_deltas(&sm);
        assert_eq!(p[0], Derivation::constant(std::slice::from_ref(&lam)));
        assert_eq!(m[0], Derivation::constant(&[-lam.recip()]));
    }

    #[test]
    fn sl3_deltas_and_minus_formula() {
        let (cd, sms) = setup(finite_a(2));
        let (p, m) = build_deltas(&sms[0]);
        assert_eq!(p[0], d(&["1", "0"]));
        assert_eq!(p[1], d(&["-1", "1"]));
        assert_eq!(m, minus_deltas_from_coroots(&cd, &sms[0]));
        // alpha_i(delta_-j) = -A_ji / (A_ii A_jj)
        let s = sms[1].scale(&[int(2), ratio(-1, 5)]).unwrap();
        let (_, m) = build_deltas(&s);
        for i in 0..2 {
            for j in 0..2 {
                let v = m[j].constant_coeffs().unwrap()[i].clone();
                assert_eq!(v, -(s.get(j, i) / (s.get(i, i) * s.get(j, j))));
            }
        }
        assert_eq!(m, minus_deltas_from_coroots(&cd, &s));
    }

    #[test]
    fn sl2_images() {
        let (cd, sms) = setup(finite_a(1));
        let rep = build_representation(&cd, &sms[0], &[1]).unwrap();
        assert_eq!(rep.h(0), &d(&["2"]));
        assert_eq!(rep.x(0), &d(&["z1"]));
        assert_eq!(rep.x_minus(0), &d(&["-z1^-1"]));
        let rep = build_representation(&cd, &sms[0], &[3]).unwrap();
        assert_eq!(rep.x(0), &d(&["1/3*z1^3"]));
        assert_eq!(rep.x(0).display_partial(), "1/3*z1^4*d/dz1");
    }

    #[test]
    fn sl3_images() {
        let (cd, sms) = setup(finite_a(2));
        let rep = build_representation(&cd, &sms[0], &[1, 1]).unwrap();
        assert_eq!(rep.h(0), &d(&["2", "-1"]));
        assert_eq!(rep.x(1), &d(&["-z2", "z2"]));
        assert_eq!(rep.x_minus(1), &d(&["0", "-z2^-1"]));
    }

    #[test]
    fn zero_index_and_shape_errors() {
        let (cd, sms) = setup(finite_a(2));
        assert_eq!(
            build_representation(&cd, &sms[0], &[1, 0]),
            Err(RepresentationError::ZeroIndex(2))
        );
        assert_eq!(
            build_representation(&cd, &sms[0], &[1]),
            Err(RepresentationError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
        let (cd3, _) = setup(finite_a(3));
        assert!(build_representation(&cd3, &sms[0], &[1, 1, 1]).is_err());
    }

    #[test]
    fn relations_hold_for_sl3() {
        let (cd, sms) = setup(finite_a(2));
        for sm in &sms {
            let rep = build_representation(&cd, sm, &[1, 1]).unwrap();
            let report = verify_relations(&rep);
            assert!(
                report.all_passed(),
                "{:?}",
                report.failures().collect::<Vec<_>>()
            );
        }
    }

    fn b_failures(a: Vec<Vec<i64>>) -> Vec<Vec<usize>> {
        let (cd, _) = setup(finite_a(2));
        let rep = build_from_matrix(&cd, &int_matrix_to_scalar(&a), &[1, 1]).unwrap();
        verify_relations(&rep)
            .failures()
            .filter(|c| c.relation == Relation::B && c.indices[0] != c.indices[1])
            .map(|c| c.indices.clone())
            .collect()
    }

    #[test]
    fn tampered_matrix_breaks_relation_b() {
        // [X_i, X_-j] for i != j is z^(a_i - a_j)(-alpha_j(d_i) d_-j - alpha_i(d_-j) d_i)
        assert_eq!(b_failures(vec![vec![1, -1], vec![-2, 1]]), vec![vec![1, 2]]);
        assert_eq!(b_failures(vec![vec![1, -2], vec![0, 1]]), vec![vec![2, 1]]);
        assert!(b_failures(vec![vec![1, -1], vec![0, 1]]).is_empty());
    }

    #[test]
    fn kernel_reports() {
        let (cd, sms) = setup(affine_a(1));
        let rep = build_representation(&cd, &sms[0], &[1, 1]).unwrap();
        let k = kernel_check(&rep);
        assert_eq!(k.centre_image_vanishes, Some(true));
        assert_eq!((k.kernel_dim, k.centre_dim), (1, 1));
        assert!(k.passed());

        let (cd, sms) = setup(finite_a(2));
        let rep = build_representation(&cd, &sms[0], &[2, -1]).unwrap();
        let k = kernel_check(&rep);
        assert_eq!(k.centre_image_vanishes, None);
        assert_eq!(k.kernel_dim, 0);
        assert!(k.passed());
    }

    #[test]
    fn dual_basis_route_matches_closed_formula() {
        for m in [finite_a(1), finite_a(3), affine_a(1), affine_a(3)] {
            let (cd, sms) = setup(m);
            let r = cd.rank();
            let n: Vec<i64> = (0..r as i64)
                .map(|k| if k % 2 == 0 { k + 1 } else { -k - 1 })
                .collect();
            let rep = build_representation(&cd, &sms[0], &n).unwrap();
            assert_eq!(
                rescaled_cartan_images_via_dual_basis(&cd, &n).unwrap(),
                rep.h_images()
            );
        }
    }

    #[test]
    fn json_round_trip_preserves_images() {
        let (cd, sms) = setup(affine_a(2));
        let s = sms[1].scale(&[int(2), ratio(1, 3), int(-1)]).unwrap();
        let rep = build_representation(&cd, &s, &[1, -2, 3]).unwrap();
        let text = serde_json::to_string(&rep.to_json()).unwrap();
        let parsed: RepresentationJson = serde_json::from_str(&text).unwrap();
        let back = Representation::from_json(&parsed).unwrap();
        assert_eq!(back, rep);
    }
}
