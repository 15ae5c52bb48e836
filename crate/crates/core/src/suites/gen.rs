//! Seeded random inputs.
//!
//! Default polynomials: `n` in {1, 2, 3}; each variable gets a degree bound
//! drawn from 0..=4; every monomial under the bounds is kept with probability
//! 1/2 and given a nonzero integer coefficient in [-9, 9].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Point, Polynomial, Rational};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    pub fn num_vars(&mut self) -> usize {
        self.range(1, 3) as usize
    }

    fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let c = self.range(-bound, bound);
            if c != 0 {
                return c;
            }
        }
    }

    /// Small rational with numerator in [-3, 3] and denominator in 1..=4.
    pub fn small_rational(&mut self) -> Rational {
        let n = self.range(-3, 3);
        let d = self.range(1, 4);
        rat(n, d)
    }

    /// Rational in (0, 1) with a denominator up to 97, unlikely to be special.
    pub fn generic_unit(&mut self) -> Rational {
        let d = self.range(2, 97);
        let n = self.range(1, d - 1);
        rat(n, d)
    }

    pub fn point(&mut self, n: usize) -> Point {
        Point::new((0..n).map(|_| self.small_rational()).collect())
    }

    pub fn direction(&mut self, n: usize) -> Point {
        loop {
            let p = Point::new((0..n).map(|_| rat(self.range(-3, 3), 1)).collect());
            if p.coords().iter().any(|c| c != &Rational::default()) {
                return p;
            }
        }
    }

    /// Sparse random polynomial with the given per-variable degree bounds.
    pub fn poly_with_bounds(&mut self, bounds: &[u32]) -> Polynomial {
        let n = bounds.len();
        let mut terms = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            if self.chance(0.5) {
                terms.push((exps.clone(), rat(self.nonzero(9), 1)));
            }
            // odometer over the box of exponents
            let mut i = 0;
            while i < n && exps[i] == bounds[i] {
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            exps[i] += 1;
        }
        if terms.is_empty() {
            terms.push((vec![0; n], rat(self.nonzero(9), 1)));
        }
        Polynomial::from_terms(n, terms).expect("consistent exponent lengths")
    }

    pub fn poly(&mut self, n: usize) -> Polynomial {
        let bounds: Vec<u32> = (0..n).map(|_| self.range(0, 4) as u32).collect();
        self.poly_with_bounds(&bounds)
    }

    /// Random polynomial made to vanish at `a` half of the time, and then
    /// to higher order along a random coordinate half of the time.
    pub fn poly_at(&mut self, a: &Point) -> Polynomial {
        let n = a.dim();
        let mut f = self.poly(n);
        if self.chance(0.5) {
            let c = f.evaluate(a).expect("matching dimensions");
            f = &f - &Polynomial::constant(n, c);
            if f.is_zero() {
                f = self.poly(n);
            }
            if self.chance(0.5) {
                let i = self.index(n);
                let k = self.range(1, 2) as u32;
                let lin = Polynomial::linear(n, i, &a.coords()[i]).expect("valid index");
                f = &f * &lin.pow(k);
            }
        }
        f
    }
}
