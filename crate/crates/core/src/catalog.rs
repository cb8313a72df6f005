//! Named Cartan matrices.
//!
//! Finite types use Bourbaki labelling. `B_r` carries the `-2` below the
//! diagonal (`B_2 = [[2,-1],[-2,2]]`), `C_r` is its transpose. Affine `A^(1)_k`
//! has `k + 1` vertices with the affine node first.

use crate::cartan::Gcm;

pub fn finite_a(r: usize) -> Vec<Vec<i64>> {
    assert!(r >= 1);
    let mut m = vec![vec![0; r]; r];
    for i in 0..r {
        m[i][i] = 2;
        if i + 1 < r {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    m
}

/// `A^(1)_k`: the `(k+1)`-cycle, or `[[2,-2],[-2,2]]` for `k = 1`.
pub fn affine_a(k: usize) -> Vec<Vec<i64>> {
    assert!(k >= 1);
    if k == 1 {
        return vec![vec![2, -2], vec![-2, 2]];
    }
    let r = k + 1;
    let mut m = finite_a(r);
    m[0][r - 1] = -1;
    m[r - 1][0] = -1;
    m
}

pub fn finite_b(r: usize) -> Vec<Vec<i64>> {
    assert!(r >= 2);
    let mut m = finite_a(r);
    m[r - 1][r - 2] = -2;
    m
}

pub fn finite_c(r: usize) -> Vec<Vec<i64>> {
    assert!(r >= 2);
    let mut m = finite_a(r);
    m[r - 2][r - 1] = -2;
    m
}

pub fn finite_d(r: usize) -> Vec<Vec<i64>> {
    assert!(r >= 4);
    let mut m = finite_a(r);
    // detach r from r-1 and attach it to r-2
    m[r - 1][r - 2] = 0;
    m[r - 2][r - 1] = 0;
    m[r - 1][r - 3] = -1;
    m[r - 3][r - 1] = -1;
    m
}

pub fn finite_e(r: usize) -> Vec<Vec<i64>> {
    assert!((6..=8).contains(&r));
    // 1 - 3 - 4 - 5 - ... - r, with 2 attached to 4
    let mut m = vec![vec![0; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |a: usize, b: usize| {
        m[a - 1][b - 1] = -1;
        m[b - 1][a - 1] = -1;
    };
    link(1, 3);
    link(2, 4);
    for v in 3..r {
        link(v, v + 1);
    }
    m
}

pub fn g2() -> Vec<Vec<i64>> {
    vec![vec![2, -1], vec![-3, 2]]
}

pub fn f4() -> Vec<Vec<i64>> {
    vec![
        vec![2, -1, 0, 0],
        vec![-1, 2, -2, 0],
        vec![0, -1, 2, -1],
        vec![0, 0, -1, 2],
    ]
}

/// Looks up names such as `A3`, `A2affine`, `A2(1)`, `B2`, `C3`, `D4`, `E6`,
/// `F4`, `G2` (case-insensitive, optional `_`).
pub fn named(name: &str) -> Option<Vec<Vec<i64>>> {
    let s = name.trim().to_ascii_uppercase().replace('_', "");
    let (letter, rest) = s.split_at(1.min(s.len()));
    let (digits, suffix): (String, String) = {
        let d: String = rest.chars().take_while(char::is_ascii_digit).collect();
        let tail = rest[d.len()..].to_string();
        (d, tail)
    };
    let r: usize = digits.parse().ok()?;
    let affine = matches!(suffix.as_str(), "AFFINE" | "(1)" | "~" | "AFF");
    if !suffix.is_empty() && !affine {
        return None;
    }
    match (letter, affine) {
        ("A", true) if r >= 1 => Some(affine_a(r)),
        ("A", false) if r >= 1 => Some(finite_a(r)),
        ("B", false) if r >= 2 => Some(finite_b(r)),
        ("C", false) if r >= 2 => Some(finite_c(r)),
        ("D", false) if r >= 4 => Some(finite_d(r)),
        ("E", false) if (6..=8).contains(&r) => Some(finite_e(r)),
        ("F", false) if r == 4 => Some(f4()),
        ("G", false) if r == 2 => Some(g2()),
        _ => None,
    }
}

pub fn named_gcm(name: &str) -> Option<Gcm> {
    named(name).map(|m| Gcm::new(m).expect("catalog matrices are valid"))
}
