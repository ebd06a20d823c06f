//! T-chains: recognition, the two extension steps, derivation certificates and
//! endpoint log discrepancies.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hj::{conjugate, hj_eval, is_t_fraction, Chain};

/// `[b₁,…,b_ϱ] ↦ [2,b₁,…,b_ϱ+1]`
pub fn t_step_a(c: &Chain) -> Chain {
    let mut w = Vec::with_capacity(c.len() + 1);
    w.push(2);
    w.extend_from_slice(c.weights());
    *w.last_mut().unwrap() += 1;
    Chain::new(w).unwrap()
}

/// `[b₁,…,b_ϱ] ↦ [b₁+1,…,b_ϱ,2]`
pub fn t_step_b(c: &Chain) -> Chain {
    let mut w = c.weights().to_vec();
    w[0] += 1;
    w.push(2);
    Chain::new(w).unwrap()
}

pub fn is_t_chain(c: &Chain) -> bool {
    is_t_fraction(&hj_eval(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    A,
    B,
}

impl Step {
    pub fn apply(self, c: &Chain) -> Chain {
        match self {
            Step::A => t_step_a(c),
            Step::B => t_step_b(c),
        }
    }
}

/// The chains with `ι = 2`: `[4]` and `[3, 2^k, 3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Seed {
    Four,
    ThreeTwosThree(usize),
}

impl Seed {
    pub fn chain(self) -> Chain {
        match self {
            Seed::Four => Chain::new(vec![4]).unwrap(),
            Seed::ThreeTwosThree(k) => {
                let mut w = vec![3];
                w.extend(std::iter::repeat_n(2, k));
                w.push(3);
                Chain::new(w).unwrap()
            }
        }
    }

    /// The seed of the given length.
    pub fn of_len(len: usize) -> Seed {
        assert!(len >= 1);
        if len == 1 {
            Seed::Four
        } else {
            Seed::ThreeTwosThree(len - 2)
        }
    }

    pub fn recognize(c: &Chain) -> Option<Seed> {
        let seed = Seed::of_len(c.len());
        (seed.chain() == *c).then_some(seed)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Four => f.write_str("[4]"),
            Seed::ThreeTwosThree(k) => write!(f, "[3,2^{k},3]"),
        }
    }
}

/// A replayable derivation of a T-chain from its seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TChainCertificate {
    pub chain: Chain,
    pub seed: Seed,
    pub steps: Vec<Step>,
}

impl TChainCertificate {
    pub fn replay(&self) -> Chain {
        self.steps
            .iter()
            .fold(self.seed.chain(), |c, step| step.apply(&c))
    }

    pub fn word(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::A => 'A',
                Step::B => 'B',
            })
            .collect()
    }
}

/// Runs the extension steps backwards until a seed is reached.
pub fn certify(c: &Chain) -> Result<TChainCertificate> {
    if !is_t_chain(c) {
        return Err(Error::NotATChain(c.to_string()));
    }
    let mut steps = Vec::new();
    let mut cur = c.clone();
    let seed = loop {
        if let Some(seed) = Seed::recognize(&cur) {
            break seed;
        }
        let w = cur.weights();
        let (first, last) = (w[0], w[w.len() - 1]);
        let prev = if first == 2 && last > 2 {
            steps.push(Step::A);
            let mut p = w[1..].to_vec();
            *p.last_mut().unwrap() -= 1;
            p
        } else if last == 2 && first > 2 {
            steps.push(Step::B);
            let mut p = w[..w.len() - 1].to_vec();
            p[0] -= 1;
            p
        } else {
            return Err(Error::NotATChain(format!(
                "{c}: reduction stuck at [{cur}]"
            )));
        };
        cur = Chain::new(prev)
            .map_err(|_| Error::NotATChain(format!("{c}: reduction left the chain domain")))?;
    };
    steps.reverse();
    let cert = TChainCertificate {
        chain: c.clone(),
        seed,
        steps,
    };
    debug_assert_eq!(cert.replay(), *c);
    Ok(cert)
}

/// All T-chains of length at most `max_len`, sorted lexicographically.
pub fn enumerate_tchains(max_len: usize) -> BTreeSet<Chain> {
    assert!(max_len >= 1, "max_len must be positive");
    let mut found = BTreeSet::new();
    let mut frontier: Vec<Chain> = (1..=max_len).map(|l| Seed::of_len(l).chain()).collect();
    while let Some(c) = frontier.pop() {
        if c.len() > max_len || !found.insert(c.clone()) {
            continue;
        }
        if c.len() < max_len {
            frontier.push(t_step_a(&c));
            frontier.push(t_step_b(&c));
        }
    }
    found
}

/// `(α₁, α_ϱ) = ((q+1)/n, (q′+1)/n)`.
pub fn endpoint_alphas(c: &Chain) -> (BigRational, BigRational) {
    let f = hj_eval(c);
    let g = conjugate(&f);
    let n = BigInt::from(f.n().clone());
    let a1 = BigRational::new(BigInt::from(f.q() + 1u32), n.clone());
    let ar = BigRational::new(BigInt::from(g.q() + 1u32), n);
    (a1, ar)
}
