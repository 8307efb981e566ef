//! Deterministic element generation.
//!
//! Every sample index gets its own ChaCha stream derived from the sampler
//! seed, so a sample's contents do not depend on which thread draws it or in
//! which order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::EvalError;
use crate::instances::{
    Discrete, DiscreteElem, Later, LaterElem, NatFun, NatFunSpace, Product, ProductElem, Stream,
    StreamSpace, Table,
};
use crate::ofe::{Level, Ofe, Value};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_RNG_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1000;

/// Size bounds for generated elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of explicitly randomized positions.
    pub prefix_len: usize,
    /// Largest generated value.
    pub max_value: Value,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            prefix_len: 8,
            max_value: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampler {
    pub seed: u64,
    pub samples: usize,
    pub bounds: Bounds,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            seed: DEFAULT_RNG_SEED,
            samples: DEFAULT_SAMPLES,
            bounds: Bounds::default(),
        }
    }
}

impl Sampler {
    pub fn new(seed: u64, samples: usize) -> Self {
        Sampler {
            seed,
            samples,
            bounds: Bounds::default(),
        }
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    /// The generator for sample number `index`.
    pub fn rng(&self, index: usize) -> SampleRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Instances that can generate random elements.
pub trait Sample: Ofe {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> Self::Elem;

    /// An element agreeing with `a` at level `n` and random beyond it, so
    /// that `a ≡_n splice(a, n)` always holds.
    fn splice(
        &self,
        a: &Self::Elem,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<Self::Elem, EvalError>;
}

fn random_table(prefix: Vec<Value>, rng: &mut SampleRng, bounds: &Bounds) -> Table {
    let mut values = prefix;
    let extra = rng.gen_range(0..=bounds.prefix_len);
    values.extend((0..extra).map(|_| rng.gen_range(0..=bounds.max_value)));
    let default = rng.gen_range(0..=bounds.max_value);
    Table::from_prefix(&values, default)
}

impl Sample for NatFunSpace {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> NatFun {
        NatFun::from_table(random_table(Vec::new(), rng, bounds))
    }

    fn splice(
        &self,
        a: &NatFun,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<NatFun, EvalError> {
        let prefix = self.truncate(n, a)?;
        Ok(NatFun::from_table(random_table(prefix, rng, bounds)))
    }
}

impl Sample for StreamSpace {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> Stream {
        Stream::from_table(random_table(Vec::new(), rng, bounds))
    }

    fn splice(
        &self,
        a: &Stream,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<Stream, EvalError> {
        let prefix = self.truncate(n, a)?;
        Ok(Stream::from_table(random_table(prefix, rng, bounds)))
    }
}

impl Sample for Discrete {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> DiscreteElem {
        DiscreteElem(rng.gen_range(0..=bounds.max_value))
    }

    fn splice(
        &self,
        a: &DiscreteElem,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<DiscreteElem, EvalError> {
        Ok(if n.get() == 0 {
            self.sample(rng, bounds)
        } else {
            *a
        })
    }
}

impl<A: Sample, B: Sample> Sample for Product<A, B> {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> Self::Elem {
        ProductElem {
            left: self.left.sample(rng, bounds),
            right: self.right.sample(rng, bounds),
        }
    }

    fn splice(
        &self,
        a: &Self::Elem,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<Self::Elem, EvalError> {
        Ok(ProductElem {
            left: self.left.splice(&a.left, n, rng, bounds)?,
            right: self.right.splice(&a.right, n, rng, bounds)?,
        })
    }
}

impl<A: Sample> Sample for Later<A> {
    fn sample(&self, rng: &mut SampleRng, bounds: &Bounds) -> Self::Elem {
        LaterElem(self.0.sample(rng, bounds))
    }

    fn splice(
        &self,
        a: &Self::Elem,
        n: Level,
        rng: &mut SampleRng,
        bounds: &Bounds,
    ) -> Result<Self::Elem, EvalError> {
        match n.pred() {
            None => Ok(self.sample(rng, bounds)),
            Some(m) => Ok(LaterElem(self.0.splice(&a.0, m, rng, bounds)?)),
        }
    }
}
