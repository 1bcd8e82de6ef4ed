use super::embed::Embedding;
use super::field::{make_field, FieldElement, FiniteField};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// A root of a polynomial found in the smallest extension `F_{q^j}` that has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerRoot {
    pub root: FieldElement,
    pub field: FiniteField,
    pub ext_degree: u32,
}

/// Scans `F_{q^j}` for `j = 1, ..., max_degree` and returns the first root in
/// enumeration order of the first extension containing one.
pub fn find_root_in_tower(f: &UniPoly, max_degree: u32) -> Result<Option<TowerRoot>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidShape(
            "root search needs a polynomial of positive degree".into(),
        ));
    }
    let base = f.field();
    for j in 1..=max_degree {
        let ext = make_field(base.characteristic() as u64, base.degree() * j)?;
        let g = f.embed_into(&Embedding::new(base, &ext)?)?;
        if let Some(root) = ext.elements().find(|&x| g.eval(x).is_zero()) {
            return Ok(Some(TowerRoot {
                root,
                field: ext,
                ext_degree: j,
            }));
        }
    }
    Ok(None)
}
