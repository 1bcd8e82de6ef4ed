use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// The canonical embedding `F_{p^a} -> F_{p^b}` (`a | b`): the generator of the
/// subfield goes to the first root of its modulus in the larger field's
/// enumeration order.
#[derive(Clone, Debug)]
pub struct Embedding {
    sub: FiniteField,
    sup: FiniteField,
    image: FieldElement,
}

fn cache() -> &'static Mutex<HashMap<(u32, u32, u32), FieldElement>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), FieldElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(sub: &FiniteField, sup: &FiniteField) -> Result<Self> {
        if sub.characteristic() != sup.characteristic() || !sup.degree().is_multiple_of(sub.degree()) {
            return Err(Error::NoEmbedding {
                p: sub.characteristic(),
                sub: sub.degree(),
                p2: sup.characteristic(),
                sup: sup.degree(),
            });
        }
        let image = match sub.modulus() {
            None => FieldElement::ONE,
            Some(m) => {
                let key = (sub.characteristic(), sub.degree(), sup.degree());
                let cached = cache().lock().unwrap().get(&key).copied();
                match cached {
                    Some(r) => r,
                    None => {
                        let r = sup
                            .elements()
                            .find(|&x| {
                                m.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                                    sup.add(sup.mul(acc, x), FieldElement(c))
                                }) == FieldElement::ZERO
                            })
                            .expect("subfield modulus splits in the extension");
                        cache().lock().unwrap().insert(key, r);
                        r
                    }
                }
            }
        };
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image,
        })
    }

    pub fn source(&self) -> &FiniteField {
        &self.sub
    }

    pub fn target(&self) -> &FiniteField {
        &self.sup
    }

    /// Image of the subfield's generator.
    pub fn generator_image(&self) -> FieldElement {
        self.image
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        if self.sub.is_prime_field() {
            return a;
        }
        self.sub
            .coords(a)
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                self.sup.add(self.sup.mul(acc, self.image), FieldElement(c))
            })
    }
}

pub fn embed(a: FieldElement, sub: &FiniteField, sup: &FiniteField) -> Result<FieldElement> {
    Ok(Embedding::new(sub, sup)?.apply(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::make_field;

    #[test]
    fn embed_examples() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(embed(FieldElement::ONE, &f2, &f4).unwrap(), FieldElement::ONE);
        let g = f4.generator();
        assert_eq!(embed(g, &f4, &f4).unwrap(), g);
        let e = Embedding::new(&f4, &f16).unwrap();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
            }
        }
    }

    #[test]
    fn embedding_is_injective() {
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let e = Embedding::new(&f9, &f81).unwrap();
        let mut img: Vec<_> = f9.elements().map(|a| e.apply(a)).collect();
        img.sort();
        img.dedup();
        assert_eq!(img.len(), 9);
    }

    #[test]
    fn no_embedding() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert!(matches!(Embedding::new(&f4, &f8), Err(Error::NoEmbedding { .. })));
        assert!(matches!(Embedding::new(&f4, &f9), Err(Error::NoEmbedding { .. })));
    }
}
