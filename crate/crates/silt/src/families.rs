//! Standard algebras used throughout: the doubled-arrow line algebras
//! `A_n` with relations `x^2 = y^2 = 0`, the Kronecker algebra, and the
//! quiver presentation of the trivial extension `T(A_n)` for even `n`.

use crate::algebra::{Algebra, AlgebraAutomorphism};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Quiver, Relation};

/// The quiver `1 => 2 => ... => n` with doubled arrows labeled x, y.
pub fn a_n_quiver(n: usize) -> Result<Quiver> {
    if n < 2 {
        return Err(Error::IndexOutOfRange("A_n needs n >= 2".into()));
    }
    let mut arrows = Vec::new();
    for v in 1..n {
        arrows.push(("x".to_string(), v, v + 1));
        arrows.push(("y".to_string(), v, v + 1));
    }
    Quiver::new(n, arrows)
}

/// All composable squares `ll` for the label `l` in the quiver.
fn square_relations(q: &Quiver, field: Field, labels: &[&str]) -> Result<Vec<Relation>> {
    let mut rels = Vec::new();
    for label in labels {
        for a in q.arrows.iter().filter(|a| &a.label == label) {
            if q.arrow_by_label(label, a.to).is_some() {
                let p = q.path_from_word(a.from, &[label, label])?;
                rels.push(Relation::new(q, vec![(field.one(), p)])?);
            }
        }
    }
    Ok(rels)
}

/// `A_n`: the path algebra of the doubled line modulo `x^2 = y^2 = 0`.
pub fn build_a_n(n: usize, field: Field) -> Result<Algebra> {
    let q = a_n_quiver(n)?;
    let rels = square_relations(&q, field, &["x", "y"])?;
    Algebra::build(q, rels, 2 * n + 2, field)
}

/// The Kronecker algebra: two arrows `1 -> 2`, no relations.
pub fn build_kronecker(field: Field) -> Result<Algebra> {
    let q = Quiver::new(2, vec![("x".into(), 1, 2), ("y".into(), 1, 2)])?;
    Algebra::build(q, vec![], 4, field)
}

/// The arrow permutation swapping the x and y arrow at every position.
pub fn swap_xy_automorphism(a: &Algebra) -> Result<AlgebraAutomorphism> {
    let q = a.quiver.as_ref().ok_or(Error::NoPresentation)?;
    let mut map = vec![0usize; q.arrows.len()];
    for arrow in &q.arrows {
        let other_label = match arrow.label.as_str() {
            "x" => "y",
            "y" => "x",
            l => {
                return Err(Error::IndexOutOfRange(format!(
                    "swap automorphism expects labels x and y, found '{l}'"
                )))
            }
        };
        let img = q.arrow_by_label(other_label, arrow.from).ok_or_else(|| {
            Error::IndexOutOfRange(format!(
                "no arrow labeled '{other_label}' at vertex {}",
                arrow.from
            ))
        })?;
        map[arrow.id] = img.id;
    }
    AlgebraAutomorphism::from_arrows(a, &map)
}

/// Quiver presentation of `T(A_n)` for even `n = 2q`: the doubled line with
/// two wrap-around arrows `n -> 1` also labeled x and y, the squares of both
/// labels zero (including through the new arrows), and `(xy)^q = (yx)^q` at
/// every vertex.
pub fn build_t_a_n_presented(n: usize, field: Field) -> Result<Algebra> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::IndexOutOfRange(
            "the wrap-around presentation of T(A_n) is stated for even n".into(),
        ));
    }
    let qq = n / 2;
    let mut arrows = Vec::new();
    for v in 1..n {
        arrows.push(("x".to_string(), v, v + 1));
        arrows.push(("y".to_string(), v, v + 1));
    }
    arrows.push(("x".to_string(), n, 1));
    arrows.push(("y".to_string(), n, 1));
    let q = Quiver::new(n, arrows)?;
    let mut rels = square_relations(&q, field, &["x", "y"])?;
    for v in 1..=n {
        let mut word_xy = Vec::new();
        let mut word_yx = Vec::new();
        for _ in 0..qq {
            word_xy.push("x");
            word_xy.push("y");
            word_yx.push("y");
            word_yx.push("x");
        }
        let pxy = q.path_from_word(v, &word_xy)?;
        let pyx = q.path_from_word(v, &word_yx)?;
        rels.push(Relation::new(&q, vec![(field.one(), pxy), (field.one().neg(), pyx)])?);
    }
    Algebra::build(q, rels, 2 * n + 2, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presented_trivial_extension_dimensions() {
        for n in [2usize, 4] {
            let t = build_t_a_n_presented(n, Field::Q).unwrap();
            assert_eq!(t.dim, 2 * n * n);
            // per-vertex: e_i, one socle cycle, and 2 paths per length 1..n-1
            for i in 1..=n {
                let d: usize = (1..=n).map(|j| t.pair_basis[i - 1][j - 1].len()).sum();
                assert_eq!(d, 2 * n);
                assert_eq!(t.pair_basis[i - 1][i - 1].len(), 2);
            }
        }
    }

    #[test]
    fn presented_trivial_extension_has_swap_automorphism() {
        let t = build_t_a_n_presented(4, Field::Q).unwrap();
        let eps = swap_xy_automorphism(&t).unwrap();
        assert!(eps.compose(&eps).is_identity());
    }
}
