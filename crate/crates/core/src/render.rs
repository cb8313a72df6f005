//! Text and LaTeX output for representations.
//!
//! LaTeX follows the usual display: exponents are written as multiples of the
//! `n_i`, coordinates as `D_j / n_j`, and the coefficient of the generator's
//! own `D_i` is pulled in front. Affine types are labelled from 0 (the affine
//! node), finite types from 1.

use num_traits::{One, Signed, Zero};

use crate::representation::Representation;
use crate::scalar::Scalar;
use crate::vectorfield::Derivation;

/// Plain text: one `name = field` line per generator, in the `D_j` basis.
pub fn render_text(rep: &Representation) -> String {
    let mut out = String::new();
    out.push_str(&format!("type: {}\n", rep.cartan().kind()));
    out.push_str(&format!(
        "n: {}\n",
        rep.n()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    ));
    out.push_str("A:\n");
    for row in rep.matrix() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&format!("  [{}]\n", cells.join(", ")));
    }
    for (name, d) in rep.generators() {
        out.push_str(&format!("{name} = {d}\n"));
    }
    out
}

fn label_offset(rep: &Representation) -> usize {
    usize::from(rep.cartan().affine_node().is_none())
}

/// LaTeX `align*` block in the `D_j / n_j`, `z_i^{n_i}` notation.
pub fn render_latex(rep: &Representation) -> String {
    let off = label_offset(rep);
    let r = rep.rank();
    let mut lines = Vec::new();
    for (a, h) in rep.h_images().iter().enumerate() {
        let name = if a < r {
            format!("H_{{{}}}", a + off)
        } else {
            "d".to_string()
        };
        lines.push(format!("{name} &\\mapsto {}", latex_field(rep, h, None)));
    }
    for i in 0..r {
        lines.push(format!(
            "X_{{{}}} &\\mapsto {}",
            i + off,
            latex_field(rep, rep.x(i), Some(i))
        ));
    }
    for i in 0..r {
        lines.push(format!(
            "X_{{-{}}} &\\mapsto {}",
            i + off,
            latex_field(rep, rep.x_minus(i), Some(i))
        ));
    }
    format!(
        "\\begin{{align*}}\n{}\n\\end{{align*}}\n",
        lines.join("\\\\\n")
    )
}

/// `\frac{p}{q}`, `-\frac{p}{q}` or an integer.
pub fn latex_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        return c.numer().to_string();
    }
    let sign = if c.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", c.numer().abs(), c.denom())
}

/// Coefficient prefix: `""` for 1, `"-"` for -1, otherwise the scalar.
fn latex_coeff(c: &Scalar) -> String {
    if c.is_one() {
        String::new()
    } else if *c == -Scalar::one() {
        "-".to_string()
    } else {
        latex_scalar(c)
    }
}

fn latex_monomial(rep: &Representation, exps: &[i64]) -> String {
    let off = label_offset(rep);
    let mut parts = Vec::new();
    for (k, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let n = rep.n()[k];
        let power = if e % n == 0 {
            match e / n {
                1 => format!("n_{{{}}}", k + off),
                -1 => format!("-n_{{{}}}", k + off),
                m => format!("{m}n_{{{}}}", k + off),
            }
        } else {
            e.to_string()
        };
        parts.push(format!("z_{{{}}}^{{{power}}}", k + off));
    }
    parts.join(" ")
}

/// `sum_j c_j n_j D_j / n_j` for constant coefficients `c`.
fn latex_linear(rep: &Representation, c: &[Scalar]) -> String {
    let off = label_offset(rep);
    let mut s = String::new();
    for (j, cj) in c.iter().enumerate() {
        let w = cj * Scalar::from_integer(rep.n()[j].into());
        if w.is_zero() {
            continue;
        }
        let frac = format!("\\frac{{D_{{{}}}}}{{n_{{{}}}}}", j + off, j + off);
        let pre = latex_coeff(&w);
        if !s.is_empty() && !w.is_negative() {
            s.push('+');
        }
        s.push_str(&pre);
        s.push_str(&frac);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn latex_field(rep: &Representation, d: &Derivation, own: Option<usize>) -> String {
    let Some((m, c)) = d.as_monomial_field() else {
        let off = label_offset(rep);
        let terms: Vec<String> = d
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(j, q)| format!("\\left({q}\\right)D_{{{}}}", j + off))
            .collect();
        return if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        };
    };
    let mono = latex_monomial(rep, m.exps());
    let factor = own
        .map(|i| &c[i] * Scalar::from_integer(rep.n()[i].into()))
        .filter(|f| !f.is_zero() && !f.is_one());
    match factor {
        Some(f) if !mono.is_empty() || own.is_some() => {
            let inner: Vec<Scalar> = c.iter().map(|x| x / &f).collect();
            format!(
                "{}{mono}\\left({}\\right)",
                latex_coeff(&f),
                latex_linear(rep, &inner)
            )
        }
        _ if mono.is_empty() => latex_linear(rep, &c),
        _ => format!("{mono}\\left({}\\right)", latex_linear(rep, &c)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Gcm;
    use crate::catalog::{affine_a, finite_a};
    use crate::representation::{build_cartan_data, build_representation};
    use crate::scalar::{int, ratio};
    use crate::solution::normalized_solution_matrices;

    fn rep(m: Vec<Vec<i64>>, sm: usize, diag: &[Scalar], n: &[i64]) -> Representation {
        let g = Gcm::new(m).unwrap();
        let cd = build_cartan_data(&g).unwrap();
        let s = normalized_solution_matrices(&g).unwrap()[sm]
            .scale(diag)
            .unwrap();
        build_representation(&cd, &s, n).unwrap()
    }

    #[test]
    fn scalars() {
        assert_eq!(latex_scalar(&int(-3)), "-3");
        assert_eq!(latex_scalar(&ratio(-1, 2)), "-\\frac{1}{2}");
    }

    #[test]
    fn sl3_latex() {
        let tex = render_latex(&rep(finite_a(2), 0, &[int(1), int(1)], &[1, 1]));
        assert!(
            tex.contains("H_{1} &\\mapsto 2\\frac{D_{1}}{n_{1}}-\\frac{D_{2}}{n_{2}}"),
            "{tex}"
        );
        assert!(
            tex.contains("X_{1} &\\mapsto z_{1}^{n_{1}}\\left(\\frac{D_{1}}{n_{1}}\\right)"),
            "{tex}"
        );
        assert!(tex.contains(
            "X_{2} &\\mapsto z_{2}^{n_{2}}\\left(-\\frac{D_{1}}{n_{1}}+\\frac{D_{2}}{n_{2}}\\right)"
        ));
        assert!(tex.contains("X_{-2} &\\mapsto -z_{2}^{-n_{2}}\\left(\\frac{D_{2}}{n_{2}}\\right)"));
    }

    #[test]
    fn scaled_and_affine_latex() {
        let tex = render_latex(&rep(affine_a(1), 0, &[int(2), int(3)], &[1, 2]));
        assert!(tex.contains("d &\\mapsto \\frac{D_{0}}{n_{0}}"), "{tex}");
        assert!(tex.contains(
            "X_{1} &\\mapsto 3z_{1}^{n_{1}}\\left(-\\frac{D_{0}}{n_{0}}+\\frac{D_{1}}{n_{1}}\\right)"
        ), "{tex}");
        assert!(
            tex.contains("X_{-1} &\\mapsto -\\frac{1}{3}z_{1}^{-n_{1}}"),
            "{tex}"
        );
    }

    #[test]
    fn text_lists_generators() {
        let text = render_text(&rep(finite_a(1), 0, &[int(1)], &[1]));
        assert!(text.contains("X1 = z1*D1"), "{text}");
        assert!(text.contains("X-1 = -z1^-1*D1"), "{text}");
    }
}
