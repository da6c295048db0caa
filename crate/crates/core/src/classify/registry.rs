//! EA classes of one layer, deduplicated in two tiers: a function fingerprint
//! picks the bucket, then addition-design canonical forms decide equivalence
//! against the bucket's representatives.

use crate::designs::addition_design;
use crate::gf2::BitMatrix;
use crate::invariants::canon::canonical_form_with_budget;
use crate::invariants::{function_fingerprint, FunctionFingerprint};
use crate::{Result, VectorialFunction};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct RegisteredClass {
    pub representative: VectorialFunction,
    pub fingerprint: FunctionFingerprint,
    canonical: Option<BitMatrix>,
}

#[derive(Clone, Debug)]
pub struct ClassRegistry {
    budget: u64,
    classes: Vec<RegisteredClass>,
    buckets: HashMap<FunctionFingerprint, Vec<usize>>,
    /// Canonical forms computed so far (for reporting).
    pub canonical_forms: u64,
}

impl ClassRegistry {
    pub fn new(budget: u64) -> ClassRegistry {
        ClassRegistry {
            budget,
            classes: Vec::new(),
            buckets: HashMap::new(),
            canonical_forms: 0,
        }
    }

    pub fn classes(&self) -> &[RegisteredClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn canonical(&mut self, f: &VectorialFunction) -> Result<BitMatrix> {
        self.canonical_forms += 1;
        Ok(canonical_form_with_budget(&addition_design(f)?, self.budget)?.matrix)
    }

    fn ensure_canonical(&mut self, i: usize) -> Result<()> {
        if self.classes[i].canonical.is_none() {
            let rep = self.classes[i].representative.clone();
            let c = self.canonical(&rep)?;
            self.classes[i].canonical = Some(c);
        }
        Ok(())
    }

    fn lookup(
        &mut self,
        f: &VectorialFunction,
        fp: &FunctionFingerprint,
    ) -> Result<(Option<usize>, Option<BitMatrix>)> {
        let bucket = self.buckets.get(fp).cloned().unwrap_or_default();
        if bucket.is_empty() {
            return Ok((None, None));
        }
        let c = self.canonical(f)?;
        for i in bucket {
            self.ensure_canonical(i)?;
            if self.classes[i].canonical.as_ref() == Some(&c) {
                return Ok((Some(i), Some(c)));
            }
        }
        Ok((None, Some(c)))
    }

    /// Class index of a bent function, registering a new class (with f as its
    /// representative) when none matches. Returns (index, is_new).
    pub fn classify(&mut self, f: &VectorialFunction) -> Result<(usize, bool)> {
        let fp = function_fingerprint(f);
        let (found, canonical) = self.lookup(f, &fp)?;
        if let Some(i) = found {
            return Ok((i, false));
        }
        let i = self.classes.len();
        self.buckets.entry(fp.clone()).or_default().push(i);
        self.classes.push(RegisteredClass {
            representative: f.clone(),
            fingerprint: fp,
            canonical,
        });
        Ok((i, true))
    }

    /// Class index of f if it is already registered.
    pub fn find(&mut self, f: &VectorialFunction) -> Result<Option<usize>> {
        let fp = function_fingerprint(f);
        Ok(self.lookup(f, &fp)?.0)
    }
}
