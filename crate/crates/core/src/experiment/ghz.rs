use num_complex::Complex64;

use crate::quantum::{ComplexAmplitude, Path};

/// Path state of (signal, Babu's idler, Alisha's idler) right after the two
/// down-conversions: `(|AAA> + |BBB>)/sqrt 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzPathState {
    amplitudes: [ComplexAmplitude; 8],
}

fn slot(path: Path) -> usize {
    match path {
        Path::A => 0,
        Path::B => 1,
    }
}

fn index(signal: Path, babu: Path, alisha: Path) -> usize {
    slot(signal) * 4 + slot(babu) * 2 + slot(alisha)
}

fn path_of(bit: usize) -> Path {
    if bit == 0 {
        Path::A
    } else {
        Path::B
    }
}

pub fn ghz_state() -> GhzPathState {
    let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[index(Path::A, Path::A, Path::A)] = h;
    amplitudes[index(Path::B, Path::B, Path::B)] = h;
    GhzPathState { amplitudes }
}

impl GhzPathState {
    pub fn amplitude(&self, signal: Path, babu: Path, alisha: Path) -> ComplexAmplitude {
        self.amplitudes[index(signal, babu, alisha)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Nonzero components as `((signal, babu, alisha), amplitude)`.
    pub fn terms(&self) -> impl Iterator<Item = ((Path, Path, Path), ComplexAmplitude)> + '_ {
        self.amplitudes.iter().enumerate().filter(|(_, a)| a.norm_sqr() > 0.0).map(|(i, &a)| {
            ((path_of(i / 4), path_of((i / 2) % 2), path_of(i % 2)), a)
        })
    }

    /// The state with A and B swapped in every slot.
    pub fn relabeled(&self) -> GhzPathState {
        let mut amplitudes = [Complex64::new(0.0, 0.0); 8];
        for (i, a) in self.amplitudes.iter().enumerate() {
            amplitudes[7 - i] = *a;
        }
        GhzPathState { amplitudes }
    }

    /// Reduced density matrix of the two slots that remain after tracing out
    /// `traced` (0 = signal, 1 = Babu, 2 = Alisha). Basis order AA, AB, BA, BB.
    pub fn reduced_density(&self, traced: usize) -> [[ComplexAmplitude; 4]; 4] {
        assert!(traced < 3, "slot {traced} out of range");
        let shift = 2 - traced;
        let split = |i: usize| -> (usize, usize) {
            let bit = (i >> shift) & 1;
            let high = i >> (shift + 1);
            let low = i & ((1 << shift) - 1);
            ((high << shift) | low, bit)
        };
        let mut rho = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, ai) in self.amplitudes.iter().enumerate() {
            let (ri, bi) = split(i);
            for (j, aj) in self.amplitudes.iter().enumerate() {
                let (rj, bj) = split(j);
                if bi == bj {
                    rho[ri][rj] += ai * aj.conj();
                }
            }
        }
        rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_norm() {
        assert!((ghz_state().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn only_aligned_triples() {
        let s = ghz_state();
        assert_eq!(s.amplitude(Path::A, Path::B, Path::A).norm(), 0.0);
        assert_eq!(s.terms().count(), 2);
        for ((p, q, r), a) in s.terms() {
            assert!(p == q && q == r);
            assert!((a.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_under_relabeling() {
        let s = ghz_state();
        assert_eq!(s.relabeled(), s);
    }

    // Hand-rolled partial trace over the last slot: rho[(s,b),(s',b')] =
    // sum_a psi(s,b,a) psi*(s',b',a).
    #[test]
    fn tracing_third_slot_gives_diagonal_mixture() {
        let s = ghz_state();
        let rho = s.reduced_density(2);
        let mut oracle = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (r, (s1, b1)) in [(Path::A, Path::A), (Path::A, Path::B), (Path::B, Path::A), (Path::B, Path::B)]
            .into_iter()
            .enumerate()
        {
            for (c, (s2, b2)) in [(Path::A, Path::A), (Path::A, Path::B), (Path::B, Path::A), (Path::B, Path::B)]
                .into_iter()
                .enumerate()
            {
                for a in Path::ALL {
                    oracle[r][c] += s.amplitude(s1, b1, a) * s.amplitude(s2, b2, a).conj();
                }
            }
        }
        for r in 0..4 {
            for c in 0..4 {
                assert!((rho[r][c] - oracle[r][c]).norm() < 1e-15);
                let want = if r == c && (r == 0 || r == 3) { 0.5 } else { 0.0 };
                assert!((rho[r][c].re - want).abs() < 1e-15 && rho[r][c].im.abs() < 1e-15);
            }
        }
        // Every slot traces to the same mixture.
        assert_eq!(s.reduced_density(0), rho);
        assert_eq!(s.reduced_density(1), rho);
    }
}
