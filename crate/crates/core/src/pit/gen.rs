use rand::Rng;

use super::circuit::Circuit;
use crate::error::Result;
use crate::field::Scalar;
use crate::rng::random_qform;

/// Circuit with three gates of `gate_len` random integer quadratics each.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, gate_len: usize) -> Result<Circuit> {
    let gates = [0; 3].map(|_| (0..gate_len).map(|_| random_qform(rng, n, 3)).collect());
    Circuit::new(n, gates)
}

/// The identically zero circuit `A·A + B·(−B) + (A−B)·(−(A+B))` for random
/// quadratics `A`, `B`.
pub fn zero_circuit<R: Rng>(rng: &mut R, n: usize) -> Result<Circuit> {
    let a = random_qform(rng, n, 3);
    let b = random_qform(rng, n, 3);
    let m1 = Scalar::from_int(-1);
    Circuit::new(
        n,
        [
            vec![a.clone(), a.clone()],
            vec![b.clone(), b.scale(&m1)],
            vec![a.sub(&b)?, a.add(&b)?.scale(&m1)],
        ],
    )
}
