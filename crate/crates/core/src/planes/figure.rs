//! Integer labels for T(2) pairs matching the usual 0-7 picture of the
//! ternion projective line over GF(2), where J = {0, 6}.
//!
//! Each 2×2 lower triangular matrix gets a 3-bit label, GF(2)-linear in its
//! entries: E11 ↦ 2, E21 ↦ 6, E22 ↦ 3. This sends the identity to 1, E21 to
//! 6 and E22 to 3, and reproduces every label of that picture. A
//! pair is labelled by the labels of its two matrices.

use crate::modspace::ModPair;
use crate::trimat::TriMatrix;

const BASIS: [(usize, usize, u8); 3] = [(0, 0, 2), (1, 0, 6), (1, 1, 3)];

fn matrix_label(m: &TriMatrix) -> u8 {
    BASIS
        .iter()
        .filter(|&&(i, j, _)| m.get(i, j) == 1)
        .fold(0, |acc, &(_, _, v)| acc ^ v)
}

/// Label of a pair over T(2); `None` for other rings.
pub fn figure1_label(g: &ModPair) -> Option<(u8, u8)> {
    let binary = |m: &TriMatrix| m.dim() == 2 && m.entries().iter().all(|&v| v <= 1);
    (binary(&g.x) && binary(&g.y)).then(|| (matrix_label(&g.x), matrix_label(&g.y)))
}

/// Inverse of [`figure1_label`].
pub fn figure1_pair(label: (u8, u8)) -> Option<ModPair> {
    let matrix = |v: u8| {
        (0..8u32)
            .map(|c| TriMatrix::decode(c, 2, 2))
            .find(|m| matrix_label(m) == v)
    };
    Some(ModPair::new(matrix(label.0)?, matrix(label.1)?))
}
