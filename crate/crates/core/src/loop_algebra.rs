//! Affine type: the loop algebra realised inside `Der(L_r)`.
//!
//! Vertex 0 is the affine node; the remaining vertices span the finite part
//! `sl(r)`. Multiplication by the loop variable `t` becomes multiplication by
//! a unit `T` of `L_r`, recovered from `F(X_0) = T * F(X_-phi)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::CartanKind;
use crate::error::LoopError;
use crate::laurent::LaurentPoly;
use crate::representation::{build_cartan_data, build_from_matrix, Representation};
use crate::scalar::Scalar;
use crate::vectorfield::{Derivation, DerivationSpan};

/// Finite-part vertices in path order (affine node excluded).
fn finite_nodes(rep: &Representation) -> Result<Vec<usize>, LoopError> {
    let cd = rep.cartan();
    let CartanKind::AffineA(_) = cd.kind() else {
        return Err(LoopError::NotAffine);
    };
    let ty = cd
        .gcm()
        .classify()
        .map_err(crate::error::RepresentationError::from)?;
    let node = cd.affine_node().unwrap_or(0);
    let order = ty
        .traversal
        .unwrap_or_else(|| (0..rep.rank()).collect::<Vec<_>>());
    Ok(order.into_iter().filter(|&v| v != node).collect())
}

fn br(x: &Derivation, y: &Derivation) -> Derivation {
    x.bracket(y).expect("images share a rank")
}

/// `F(H_phi)` with `H_phi` the sum of the finite-part coroots.
pub fn h_phi(rep: &Representation) -> Result<Derivation, LoopError> {
    let mut acc = Derivation::zero(rep.rank());
    for i in finite_nodes(rep)? {
        acc = &acc + rep.h(i);
    }
    Ok(acc)
}

/// Closes the images of the finite-part generators under the bracket and
/// returns a basis of the resulting Lie algebra (expected: `sl(r)`).
pub fn finite_part_closure(rep: &Representation) -> Result<Vec<Derivation>, LoopError> {
    let nodes = finite_nodes(rep)?;
    let r = rep.rank();
    let bound = r * r - 1;
    let mut span = DerivationSpan::new();
    let mut basis: Vec<Derivation> = Vec::new();
    let gens = nodes
        .iter()
        .map(|&i| rep.h(i))
        .chain(nodes.iter().map(|&i| rep.x(i)))
        .chain(nodes.iter().map(|&i| rep.x_minus(i)));
    for g in gens {
        if span.insert(g) {
            basis.push(g.clone());
        }
    }
    let mut next = 0;
    while next < basis.len() {
        for k in 0..next {
            let c = br(&basis[k], &basis[next]);
            if span.insert(&c) {
                basis.push(c);
                if basis.len() > bound {
                    return Err(LoopError::ClosureDiverged { bound });
                }
            }
        }
        next += 1;
    }
    Ok(basis)
}

/// `(X_phi, X_-phi)`: nested brackets along the finite path, with `X_-phi`
/// rescaled so that `[X_phi, X_-phi] = F(H_phi)`.
pub fn highest_root_vectors(rep: &Representation) -> Result<(Derivation, Derivation), LoopError> {
    let nodes = finite_nodes(rep)?;
    let chain = |pick: &dyn Fn(usize) -> Derivation| -> Derivation {
        let mut it = nodes.iter().rev();
        let mut acc = pick(*it.next().expect("finite part is nonempty"));
        for &i in it {
            acc = br(&pick(i), &acc);
        }
        acc
    };
    let plus = chain(&|i| rep.x(i).clone());
    let minus = chain(&|i| rep.x_minus(i).clone());
    let target = h_phi(rep)?;
    let got = br(&plus, &minus);
    let lambda = constant_ratio(&got, &target).ok_or(LoopError::NormalizationImpossible)?;
    Ok((plus, minus.scale(&lambda.recip())))
}

/// `c` with `a = c * b` for constant fields, `c != 0`.
fn constant_ratio(a: &Derivation, b: &Derivation) -> Option<Scalar> {
    let (x, y) = (a.constant_coeffs()?, b.constant_coeffs()?);
    let k = y.iter().position(|c| !c.is_zero())?;
    let c = &x[k] / &y[k];
    (!c.is_zero() && b.scale(&c) == *a).then_some(c)
}

/// The unit `u` with `a = u * b`, if one exists.
pub fn unit_ratio(a: &Derivation, b: &Derivation) -> Option<LaurentPoly> {
    let k = b.coords().iter().position(|q| !q.is_zero())?;
    let inv = b.coord(k).invert().ok()?;
    let u = a.coord(k).try_mul(&inv).ok()?;
    (u.is_unit() && b.mul_poly(&u).ok()? == *a).then_some(u)
}

/// `T` from `F(X_0) = T * F(X_-phi)`.
pub fn extract_t(rep: &Representation) -> Result<LaurentPoly, LoopError> {
    let (_, minus) = highest_root_vectors(rep)?;
    let node = rep.cartan().affine_node().ok_or(LoopError::NotAffine)?;
    unit_ratio(rep.x(node), &minus).ok_or(LoopError::NotProportional)
}

/// `T` from the other half of the dictionary, `F(X_-0) = T^-1 * F(X_phi)`.
pub fn extract_t_from_minus(rep: &Representation) -> Result<LaurentPoly, LoopError> {
    let (plus, _) = highest_root_vectors(rep)?;
    let node = rep.cartan().affine_node().ok_or(LoopError::NotAffine)?;
    unit_ratio(&plus, rep.x_minus(node)).ok_or(LoopError::NotProportional)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LoopLedger {
    pub checks: Vec<LoopCheck>,
}

impl LoopLedger {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LoopCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(LoopCheck {
            name: name.into(),
            passed: failure.is_none(),
            detail: failure,
        });
    }
}

/// Everything needed to check the loop law, plus the resulting ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCertificate {
    pub sl_basis: Vec<Derivation>,
    pub t: LaurentPoly,
    pub phi_plus: Derivation,
    pub phi_minus: Derivation,
    pub m_range: (i64, i64),
    pub checks: LoopLedger,
}

impl Serialize for LoopCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LoopCertificate", 7)?;
        st.serialize_field("T", &self.t.to_string())?;
        st.serialize_field("sl_dimension", &self.sl_basis.len())?;
        st.serialize_field(
            "sl_basis",
            &self
                .sl_basis
                .iter()
                .map(Derivation::to_strings)
                .collect::<Vec<_>>(),
        )?;
        st.serialize_field("phi_plus", &self.phi_plus.to_strings())?;
        st.serialize_field("phi_minus", &self.phi_minus.to_strings())?;
        st.serialize_field("m_range", &[self.m_range.0, self.m_range.1])?;
        st.serialize_field("checks", &self.checks)?;
        st.end()
    }
}

pub const DEFAULT_M_RANGE: (i64, i64) = (-3, 3);

/// Builds the certificate and runs [`verify_loop_law`].
pub fn certify(rep: &Representation, m_range: (i64, i64)) -> Result<LoopCertificate, LoopError> {
    let sl_basis = finite_part_closure(rep)?;
    let (phi_plus, phi_minus) = highest_root_vectors(rep)?;
    let t = extract_t(rep)?;
    let mut cert = LoopCertificate {
        sl_basis,
        t,
        phi_plus,
        phi_minus,
        m_range,
        checks: LoopLedger::default(),
    };
    cert.checks = verify_loop_law(rep, &cert, m_range)?;
    Ok(cert)
}

fn first_failure<I: IntoIterator<Item = Option<String>>>(it: I) -> Option<String> {
    it.into_iter().flatten().next()
}

/// Checks the loop-algebra dictionary and `[T^m S, T^n S'] = T^(m+n) [S, S']`.
pub fn verify_loop_law(
    rep: &Representation,
    cert: &LoopCertificate,
    m_range: (i64, i64),
) -> Result<LoopLedger, LoopError> {
    let r = rep.rank();
    let node = rep.cartan().affine_node().ok_or(LoopError::NotAffine)?;
    let mut ledger = LoopLedger::default();
    let t = &cert.t;

    let expected_dim = r * r - 1;
    ledger.record(
        "sl_dimension",
        (cert.sl_basis.len() != expected_dim).then(|| {
            format!(
                "closure has dimension {}, expected {expected_dim}",
                cert.sl_basis.len()
            )
        }),
    );
    ledger.record(
        "t_is_unit",
        (!t.is_unit()).then(|| format!("T = {t} is not a unit")),
    );
    let t_alt = extract_t_from_minus(rep);
    ledger.record(
        "t_from_minus_agrees",
        match &t_alt {
            Ok(u) if u == t => None,
            Ok(u) => Some(format!("second extraction gives {u}")),
            Err(e) => Some(e.to_string()),
        },
    );

    let hphi = h_phi(rep)?;
    ledger.record(
        "phi_bracket",
        (br(&cert.phi_plus, &cert.phi_minus) != hphi).then(|| "[X_phi, X_-phi] != F(H_phi)".into()),
    );

    ledger.record(
        "sl_annihilates_T",
        first_failure(cert.sl_basis.iter().enumerate().map(|(k, s)| {
            let v = s.apply(t).expect("same rank");
            (!v.is_zero()).then(|| format!("basis element {k} sends T to {v}"))
        })),
    );
    let d = rep
        .degree_derivation()
        .expect("affine representation has d");
    let dt = d.apply(t)?;
    ledger.record("d_scales_T", (&dt != t).then(|| format!("F(d)(T) = {dt}")));

    let t_inv = t.invert()?;
    ledger.record(
        "psi_X0",
        (cert.phi_minus.mul_poly(t)? != *rep.x(node)).then(|| "F(X_0) != T X_-phi".into()),
    );
    ledger.record(
        "psi_X-0",
        (cert.phi_plus.mul_poly(&t_inv)? != *rep.x_minus(node))
            .then(|| "F(X_-0) != T^-1 X_phi".into()),
    );
    ledger.record(
        "psi_H0",
        (rep.h(node) != &-&hphi).then(|| "F(H_0) != -F(H_phi)".into()),
    );

    let (lo, hi) = m_range;
    let powers: Vec<(i64, LaurentPoly)> = (lo.min(2 * lo)..=hi.max(2 * hi))
        .map(|m| t.power(m).map(|p| (m, p)))
        .collect::<Result<_, _>>()?;
    let pow = |m: i64| &powers.iter().find(|(k, _)| *k == m).expect("power table").1;
    let brackets: Vec<Vec<Derivation>> = cert
        .sl_basis
        .iter()
        .map(|s| cert.sl_basis.iter().map(|s2| br(s, s2)).collect())
        .collect();
    for m in lo..=hi {
        for n in lo..=hi {
            let mut failure = None;
            'pairs: for (a, s) in cert.sl_basis.iter().enumerate() {
                let left = s.mul_poly(pow(m))?;
                for (b, s2) in cert.sl_basis.iter().enumerate() {
                    let lhs = br(&left, &s2.mul_poly(pow(n))?);
                    if lhs != brackets[a][b].mul_poly(pow(m + n))? {
                        failure = Some(format!("basis pair ({a}, {b})"));
                        break 'pairs;
                    }
                }
            }
            ledger.record(format!("loop_bracket[{m},{n}]"), failure);
        }
    }

    ledger.record("finite_restriction", finite_restriction_failure(rep)?);
    Ok(ledger)
}

/// Setting `D_0 = 0` in the finite-part images must give the finite-type
/// representation built from the corresponding submatrix of `A`.
fn finite_restriction_failure(rep: &Representation) -> Result<Option<String>, LoopError> {
    let node = rep.cartan().affine_node().ok_or(LoopError::NotAffine)?;
    let rest: Vec<usize> = (0..rep.rank()).filter(|&i| i != node).collect();
    let sub_gcm = rep.cartan().gcm().submatrix(&rest);
    let cd = build_cartan_data(&sub_gcm)?;
    let a: Vec<Vec<Scalar>> = rest
        .iter()
        .map(|&i| rest.iter().map(|&j| rep.matrix()[i][j].clone()).collect())
        .collect();
    let n: Vec<i64> = rest.iter().map(|&i| rep.n()[i]).collect();
    let finite = build_from_matrix(&cd, &a, &n)?;
    for (k, &i) in rest.iter().enumerate() {
        let pairs = [
            ("H", rep.h(i), finite.h(k)),
            ("X", rep.x(i), finite.x(k)),
            ("X-", rep.x_minus(i), finite.x_minus(k)),
        ];
        for (name, affine, expected) in pairs {
            if affine.project_out(node).as_ref() != Some(expected) {
                return Ok(Some(format!("{name}{} differs after D_0 = 0", i + 1)));
            }
        }
    }
    Ok(None)
}

/// Convenience: `T` as `(coefficient, exponents)`.
pub fn t_parts(t: &LaurentPoly) -> Option<(Scalar, Vec<i64>)> {
    t.as_single_term()
        .map(|(m, c)| (c.clone(), m.exps().to_vec()))
}

impl LoopCertificate {
    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }

    pub fn t_coefficient(&self) -> Scalar {
        t_parts(&self.t).map_or_else(Scalar::one, |(c, _)| c)
    }
}
