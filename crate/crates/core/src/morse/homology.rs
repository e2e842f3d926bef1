use super::MorseComplexData;
use crate::error::Result;
use crate::gf2::{kernel_basis, quotient_basis, BitVec};

/// Betti numbers of the Morse complex and a basis of cycle representatives,
/// each a vector over the critical cells of its dimension.
#[derive(Clone, Debug)]
pub struct MorseHomology {
    pub betti: Vec<usize>,
    pub basis: Vec<Vec<BitVec>>,
}

/// Homology of `(M_*, ∂̃)`. Critical cells that are cycles on their own are
/// preferred as representatives, and whenever a single critical cell `c` is a
/// basis element, `c` is cleared from the support of every other one.
pub fn morse_homology(m: &MorseComplexData) -> Result<MorseHomology> {
    let dims = m.dims();
    let mut betti = Vec::with_capacity(dims);
    let mut basis = Vec::with_capacity(dims);
    for p in 0..dims {
        let k = m.critical(p).len();
        let d = m.boundary(p);
        let mut cycles: Vec<BitVec> = (0..k)
            .filter(|&c| d.column(c).is_zero())
            .map(|c| BitVec::unit(k, c))
            .collect();
        cycles.extend(kernel_basis(d));
        let boundaries: Vec<BitVec> = if p + 1 < dims {
            let up = m.boundary(p + 1);
            (0..up.cols()).map(|c| up.column(c)).collect()
        } else {
            Vec::new()
        };
        let mut reps = quotient_basis(&cycles, &boundaries)?;
        let singles: Vec<usize> = reps
            .iter()
            .filter(|r| r.count_ones() == 1)
            .map(|r| r.first_one().unwrap())
            .collect();
        for c in singles {
            for r in reps.iter_mut() {
                if r.count_ones() > 1 && r.get(c) {
                    r.flip(c);
                }
            }
        }
        betti.push(reps.len());
        basis.push(reps);
    }
    Ok(MorseHomology { betti, basis })
}
