#![allow(dead_code, clippy::needless_range_loop)]

use naqm::{Element, Enveloping, MultOp, Side, Word};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rand_c(r: &mut impl Rng) -> C {
    C::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn rand_element(r: &mut impl Rng, n: usize) -> Element<C> {
    Element::new((0..n).map(|_| rand_c(r)).collect())
}

/// One to three weighted generator sequences of length up to `max_len`.
pub fn rand_word(r: &mut impl Rng, n: usize, max_len: usize) -> Word<C> {
    let terms = r.gen_range(1..=3);
    let mut w = Word::zero();
    for _ in 0..terms {
        let len = r.gen_range(1..=max_len);
        let seq: Vec<(Side, usize)> = (0..len)
            .map(|_| {
                let side = if r.gen_bool(0.5) { Side::L } else { Side::R };
                (side, r.gen_range(0..n))
            })
            .collect();
        w = w.add(&Word::sequence(&seq).scale(&rand_c(r)));
    }
    w
}

pub fn rand_op(env: &Enveloping<C>, r: &mut impl Rng, max_len: usize) -> MultOp<C> {
    env.evaluate_word(&rand_word(r, env.dim(), max_len)).unwrap()
}

/// `X + X*`, keeping word provenance.
pub fn observable(env: &Enveloping<C>, x: &MultOp<C>) -> MultOp<C> {
    x.add(&env.star_op(x).unwrap()).unwrap()
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

const TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
];

/// `e_i e_j` from the seven oriented triples: `(sign, index)`.
pub fn oct_product(i: usize, j: usize) -> (f64, usize) {
    if i == 0 {
        return (1.0, j);
    }
    if j == 0 {
        return (1.0, i);
    }
    if i == j {
        return (-1.0, 0);
    }
    for &(a, b, k) in &TRIPLES {
        let cyc = [(a, b, k), (b, k, a), (k, a, b)];
        for &(x, y, z) in &cyc {
            if (x, y) == (i, j) {
                return (1.0, z);
            }
            if (y, x) == (i, j) {
                return (-1.0, z);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies in one triple")
}

pub fn oct_multiply(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::new(0.0, 0.0); 8];
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = oct_product(i, j);
            out[k] += a[i] * b[j] * s;
        }
    }
    out
}

/// Dormand–Prince 5(4) integration of `y' = m y` from 0 to `t`.
pub fn rk45(m: &naqm::Matrix<C>, y0: &[C], t: f64, rtol: f64) -> Vec<C> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let f = |y: &[C]| m.mul_vec(y);
    let mut y = y0.to_vec();
    let mut s = 0.0;
    let mut h = (t / 100.0).max(1e-6);
    while s < t {
        if s + h > t {
            h = t - s;
        }
        let mut k: Vec<Vec<C>> = vec![f(&y)];
        for row in A.iter() {
            let yi: Vec<C> = (0..y.len())
                .map(|i| y[i] + k.iter().zip(row).map(|(kj, a)| kj[i] * (a * h)).sum::<C>())
                .collect();
            k.push(f(&yi));
        }
        let y5: Vec<C> = (0..y.len())
            .map(|i| y[i] + k.iter().zip(B5).map(|(kj, b)| kj[i] * (b * h)).sum::<C>())
            .collect();
        let y4: Vec<C> = (0..y.len())
            .map(|i| y[i] + k.iter().zip(B4).map(|(kj, b)| kj[i] * (b * h)).sum::<C>())
            .collect();
        let scale = y5.iter().map(|v| v.norm()).fold(1.0, f64::max);
        let err = max_diff(&y5, &y4) / (rtol * scale);
        if err <= 1.0 {
            s += h;
            y = y5;
        }
        h *= (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
    }
    y
}
