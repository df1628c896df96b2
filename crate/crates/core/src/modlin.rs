//! Linear algebra over `Z/N`: diagonalisation by unimodular row and column
//! operations, used to solve `A x ≡ b (mod N)` and to find kernels.

use num_integer::Integer;

/// Dense matrix with entries in `0..modulus`.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    modulus: i64,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ModMatrix {
    pub fn zeros(modulus: i64, rows: usize, cols: usize) -> Self {
        assert!(modulus >= 1);
        ModMatrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        let e = &mut self.data[r * self.cols + c];
        *e = (*e + v).rem_euclid(self.modulus);
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(x).fold(0i64, |acc, (&a, &b)| (acc + a * b).rem_euclid(self.modulus))
            })
            .collect()
    }
}

/// Result of diagonalising `U A V = D` with `D` diagonal.
struct Diagonal {
    diag: Vec<i64>,
    /// Columns of `V`, stored column-major: `v[c]` is column `c`.
    v: Vec<Vec<i64>>,
}

/// Reduces `a` to diagonal form, applying the same row operations to each
/// right-hand side in `rhs`.
#[allow(clippy::needless_range_loop)]
fn diagonalise(a: &ModMatrix, rhs: &mut [Vec<i64>]) -> Diagonal {
    let n = a.modulus;
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<i64>> = (0..rows).map(|r| a.data[r * cols..(r + 1) * cols].to_vec()).collect();
    let mut v: Vec<Vec<i64>> = (0..cols).map(|c| (0..cols).map(|k| i64::from(k == c)).collect()).collect();
    let mut diag = Vec::new();
    let red = |x: i64| x.rem_euclid(n);
    for k in 0..rows.min(cols) {
        // pivot: entry with the smallest gcd against the modulus
        let mut best: Option<(i64, usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(k) {
            for (c, &e) in row.iter().enumerate().skip(k) {
                if e != 0 {
                    let g = e.gcd(&n);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, r, c));
                        if g == 1 {
                            break;
                        }
                    }
                }
            }
            if matches!(best, Some((1, _, _))) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        m.swap(k, pr);
        for b in rhs.iter_mut() {
            b.swap(k, pr);
        }
        if pc != k {
            for row in m.iter_mut() {
                row.swap(k, pc);
            }
            v.swap(k, pc);
        }
        loop {
            for r in k + 1..rows {
                if m[r][k] == 0 {
                    continue;
                }
                let (p, q) = (m[k][k], m[r][k]);
                if q % p == 0 {
                    let f = q / p;
                    for c in k..cols {
                        m[r][c] = red(m[r][c] - f * m[k][c]);
                    }
                    for b in rhs.iter_mut() {
                        b[r] = red(b[r] - f * b[k]);
                    }
                    continue;
                }
                let e = p.extended_gcd(&q);
                let (s, t) = (e.x, e.y);
                let (pg, qg) = (p / e.gcd, q / e.gcd);
                for c in k..cols {
                    let (x, y) = (m[k][c], m[r][c]);
                    m[k][c] = red(s * x + t * y);
                    m[r][c] = red(-qg * x + pg * y);
                }
                for b in rhs.iter_mut() {
                    let (x, y) = (b[k], b[r]);
                    b[k] = red(s * x + t * y);
                    b[r] = red(-qg * x + pg * y);
                }
            }
            for c in k + 1..cols {
                if m[k][c] == 0 {
                    continue;
                }
                let (p, q) = (m[k][k], m[k][c]);
                if q % p == 0 {
                    let f = q / p;
                    for row in m.iter_mut().skip(k) {
                        row[c] = red(row[c] - f * row[k]);
                    }
                    for i in 0..cols {
                        v[c][i] = red(v[c][i] - f * v[k][i]);
                    }
                    continue;
                }
                let e = p.extended_gcd(&q);
                let (s, t) = (e.x, e.y);
                let (pg, qg) = (p / e.gcd, q / e.gcd);
                for row in m.iter_mut().skip(k) {
                    let (x, y) = (row[k], row[c]);
                    row[k] = red(s * x + t * y);
                    row[c] = red(-qg * x + pg * y);
                }
                for i in 0..cols {
                    let (x, y) = (v[k][i], v[c][i]);
                    v[k][i] = red(s * x + t * y);
                    v[c][i] = red(-qg * x + pg * y);
                }
            }
            if (k + 1..rows).all(|r| m[r][k] == 0) && (k + 1..cols).all(|c| m[k][c] == 0) {
                break;
            }
        }
        diag.push(m[k][k]);
    }
    Diagonal { diag, v }
}

fn combine(v: &[Vec<i64>], y: &[i64], n: i64) -> Vec<i64> {
    let cols = v.len();
    let mut x = vec![0i64; cols];
    for (c, &yc) in y.iter().enumerate() {
        if yc != 0 {
            for i in 0..cols {
                x[i] = (x[i] + yc * v[c][i]).rem_euclid(n);
            }
        }
    }
    x
}

/// A solution of `A x ≡ b (mod N)`, if one exists.
pub fn solve(a: &ModMatrix, b: &[i64]) -> Option<Vec<i64>> {
    let n = a.modulus;
    let mut rhs = vec![b.iter().map(|x| x.rem_euclid(n)).collect::<Vec<_>>()];
    let d = diagonalise(a, &mut rhs);
    let b = &rhs[0];
    let mut y = vec![0i64; a.cols];
    for (k, &dk) in d.diag.iter().enumerate() {
        let g = dk.gcd(&n);
        if b[k] % g != 0 {
            return None;
        }
        let m = n / g;
        let inv = mod_inverse(dk / g, m);
        y[k] = ((b[k] / g) * inv).rem_euclid(m);
    }
    if b.iter().skip(d.diag.len()).any(|&x| x != 0) {
        return None;
    }
    Some(combine(&d.v, &y, n))
}

/// Generators of the kernel `{x : A x ≡ 0 (mod N)}`.
pub fn kernel(a: &ModMatrix) -> Vec<Vec<i64>> {
    let n = a.modulus;
    let d = diagonalise(a, &mut []);
    let mut gens = Vec::new();
    for c in 0..a.cols {
        let mut y = vec![0i64; a.cols];
        match d.diag.get(c) {
            Some(&dk) => {
                let g = dk.gcd(&n);
                if g == 1 {
                    continue;
                }
                y[c] = n / g;
            }
            None => y[c] = 1,
        }
        gens.push(combine(&d.v, &y, n));
    }
    gens
}

/// Size of the solution set of `A x ≡ 0 (mod N)`.
pub fn kernel_size(a: &ModMatrix) -> u128 {
    let n = a.modulus;
    let d = diagonalise(a, &mut []);
    let mut size: u128 = 1;
    for c in 0..a.cols {
        size *= match d.diag.get(c) {
            Some(&dk) => dk.gcd(&n) as u128,
            None => n as u128,
        };
    }
    size
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}
