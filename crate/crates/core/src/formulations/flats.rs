use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::FormulationError;
use crate::lp::{ExtendedFormulation, LinearProgram, Rational, Sense, VarId};
use crate::matroid::{connected_flats, mask_indices, BinaryMatroid};

/// `P(M) = {x >= 0 : x(F) <= rk(F) for every connected flat F}`, with loops
/// pinned to zero.
pub fn explicit_flat_ef(m: &BinaryMatroid, cap: usize) -> Result<ExtendedFormulation, FormulationError> {
    let flats = connected_flats(m, cap)?;
    let mut lp = LinearProgram::new();
    let mut coords: Vec<(String, VarId)> = Vec::with_capacity(m.len());
    for (i, e) in m.elements().iter().enumerate() {
        let ub = m.is_loop(i).then(Rational::zero);
        coords.push((e.clone(), lp.add_var(&format!("x:{e}"), Some(Rational::zero()), ub)?));
    }
    for (k, &f) in flats.iter().enumerate() {
        let members = mask_indices(f);
        if members.len() == 1 && m.is_loop(members[0]) {
            continue;
        }
        let rank = m.rank_mask(f);
        lp.add_row(
            &format!("flat{k}"),
            members.iter().map(|&i| (coords[i].1, Rational::one())),
            Sense::Le,
            Rational::from(rank),
        )?;
    }
    Ok(ExtendedFormulation::from_vars(lp, &coords)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{Graph, DEFAULT_CAP};

    #[test]
    fn triangle_rows() {
        let ef = explicit_flat_ef(&Graph::complete(3).cycle_matroid(), DEFAULT_CAP).unwrap();
        // Three singleton flats and the whole triangle, plus nonnegativity.
        assert_eq!(ef.lp.rows().len(), 4);
        assert_eq!(ef.inequality_count(), 7);
        let one = Rational::one();
        assert_eq!(ef.maximize_over_projection(&[one.clone(), one.clone(), one]), Some(Rational::from_integer(2)));
    }

    #[test]
    fn free_matroid_is_the_cube() {
        let m = BinaryMatroid::from_strings(&["a", "b"], &["10", "01"]).unwrap();
        let ef = explicit_flat_ef(&m, DEFAULT_CAP).unwrap();
        assert_eq!(ef.lp.rows().len(), 2);
        assert_eq!(ef.maximize_over_projection(&[Rational::one(), Rational::one()]), Some(Rational::from_integer(2)));
    }
}
