use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{factor, FFElem, FFPoly, FiniteField};
use crate::error::{Error, Result};

/// A field homomorphism GF(p^a) → GF(p^b), determined by the image of the
/// generator class `z` of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEmbedding {
    src: FiniteField,
    dst: FiniteField,
    gen_image: FFElem,
}

fn embed_cache() -> &'static Mutex<HashMap<(u32, usize, usize), FieldEmbedding>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize, usize), FieldEmbedding>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldEmbedding {
    /// The canonical embedding: `z` goes to the smallest root of the source
    /// modulus in the target.
    pub fn canonical(src: &FiniteField, dst: &FiniteField) -> Result<FieldEmbedding> {
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::NoEmbedding {
                p: src.p(),
                from: src.degree(),
                to: dst.degree(),
            });
        }
        if src == dst {
            return Ok(FieldEmbedding::identity(src));
        }
        let key = (src.p(), src.degree(), dst.degree());
        if let Some(e) = embed_cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let gen_image = if src.degree() == 1 {
            dst.zero()
        } else {
            let m = FFPoly::new(
                dst,
                src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect(),
            );
            factor::roots_in_field(&m)
                .into_iter()
                .next()
                .expect("a finite field contains all roots of its subfields' moduli")
        };
        let emb = FieldEmbedding {
            src: src.clone(),
            dst: dst.clone(),
            gen_image,
        };
        embed_cache().lock().unwrap().insert(key, emb.clone());
        Ok(emb)
    }

    pub fn identity(field: &FiniteField) -> FieldEmbedding {
        FieldEmbedding {
            src: field.clone(),
            dst: field.clone(),
            gen_image: field.generator(),
        }
    }

    pub fn source(&self) -> &FiniteField {
        &self.src
    }

    pub fn target(&self) -> &FiniteField {
        &self.dst
    }

    pub fn generator_image(&self) -> &FFElem {
        &self.gen_image
    }

    pub fn apply(&self, e: &FFElem) -> FFElem {
        assert_eq!(e.field(), &self.src, "element outside embedding source");
        if self.src == self.dst {
            return e.clone();
        }
        let mut acc = self.dst.zero();
        for &c in e.coeffs().iter().rev() {
            acc = &(&acc * &self.gen_image) + &self.dst.from_int(c as i64);
        }
        acc
    }

    pub fn apply_poly(&self, f: &FFPoly) -> FFPoly {
        f.map_coeffs(&self.dst, |c| self.apply(c))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FieldEmbedding) -> FieldEmbedding {
        assert_eq!(self.dst, other.src);
        FieldEmbedding {
            src: self.src.clone(),
            dst: other.dst.clone(),
            gen_image: other.apply(&self.gen_image),
        }
    }
}

/// Image of `e` under the canonical embedding into `target`.
pub fn embed(e: &FFElem, target: &FiniteField) -> Result<FFElem> {
    Ok(FieldEmbedding::canonical(e.field(), target)?.apply(e))
}
