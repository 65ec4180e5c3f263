use super::Diagram;
use crate::error::Result;
use crate::homology::{CanonicalGroup, Complex, Grading, PresentedAbGroup};
use crate::poset::ChainSet;
use crate::{Int, Matrix};

fn label(f: &Diagram, chain: &[usize], sep: &str) -> String {
    chain
        .iter()
        .map(|&c| f.base().name(c))
        .collect::<Vec<_>>()
        .join(sep)
}

fn offsets(f: &Diagram, chains: &ChainSet, pick: impl Fn(&[usize]) -> usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(chains.len());
    let mut total = 0;
    for c in &chains.chains {
        out.push(total);
        total += f.value(pick(c)).generators();
    }
    out
}

fn sign(i: usize) -> Int {
    Int::from(if i.is_multiple_of(2) { 1 } else { -1 })
}

/// Cochain complex over the given chain sets (degree `k` = `chains[k]`),
/// coefficients `F(c_n)` and
/// `(δφ)(c₀…c_{n+1}) = Σ_{i≤n} (−1)^i φ(…ĉ_i…) + (−1)^{n+1} F(c_n → c_{n+1}) φ(c₀…c_n)`.
fn cochain_complex(f: &Diagram, chains: Vec<ChainSet>) -> Result<Complex> {
    let last = |c: &[usize]| *c.last().expect("chains are nonempty");
    let offs: Vec<Vec<usize>> = chains.iter().map(|cs| offsets(f, cs, last)).collect();
    let mut blocks = Vec::with_capacity(chains.len());
    for cs in &chains {
        blocks.push(
            cs.chains
                .iter()
                .map(|c| (label(f, c, ">"), f.value(last(c)).clone()))
                .collect::<Vec<(String, PresentedAbGroup)>>(),
        );
    }
    let gens = |k: usize| blocks[k].iter().map(|(_, g)| g.generators()).sum::<usize>();
    let mut differentials = Vec::new();
    for n in 0..chains.len().saturating_sub(1) {
        let index = chains[n].position_map();
        let mut d = Matrix::zeros(gens(n + 1), gens(n));
        for (r, chain) in chains[n + 1].chains.iter().enumerate() {
            let row = offs[n + 1][r];
            let bottom = last(chain);
            for i in 0..=n {
                let mut face = chain.clone();
                face.remove(i);
                let col = offs[n][index[face.as_slice()]];
                let id = Matrix::identity(f.value(bottom).generators()).scale(&sign(i));
                d.add_block(row, col, &id);
            }
            let face = &chain[..=n];
            let col = offs[n][index[face]];
            let m = f.map(chain[n], bottom).expect("chain is decreasing");
            d.add_block(row, col, &m.scale(&sign(n + 1)));
        }
        differentials.push(d);
    }
    Complex::from_blocks(Grading::Cochain, blocks, differentials)
}

/// `C^*_+(F)` through degree `top` (all nonzero degrees when `None`).
pub(crate) fn reduced_complex_upto(f: &Diagram, top: Option<usize>) -> Result<Complex> {
    let h = f.base().longest_chain_length();
    let last = top.map_or(h, |t| t.min(h));
    cochain_complex(f, (0..=last).map(|n| f.base().chains(n)).collect())
}

/// The reduced cochain complex: products of `F(c_n)` over strict chains
/// `c₀ > … > c_n`.
pub fn reduced_complex(f: &Diagram) -> Result<Complex> {
    reduced_complex_upto(f, None)
}

/// The cochain complex over all chains, identities included, through degree
/// `cap + 1`; its cohomology is meaningful through degree `cap`.
pub fn full_complex_truncated(f: &Diagram, cap: usize) -> Result<Complex> {
    cochain_complex(f, (0..=cap + 1).map(|n| f.base().weak_chains(n)).collect())
}

/// `lim^n F`.
pub fn derived_limit(f: &Diagram, n: usize) -> Result<CanonicalGroup> {
    if n > f.base().longest_chain_length() {
        return Ok(CanonicalGroup::zero());
    }
    let c = reduced_complex_upto(f, Some(n + 1))?;
    Ok(c.homology(n)?.canonical_form())
}

/// Chain complex with `C_n = ⊕ F(c₀)` over strict chains `c₀ > … > c_n`;
/// the face deleting `c₀` applies `F(c₀ → c₁)`.
pub(crate) fn colimit_complex(f: &Diagram, top: usize) -> Result<Complex> {
    let h = f.base().longest_chain_length();
    let chains: Vec<ChainSet> = (0..=top.min(h)).map(|n| f.base().chains(n)).collect();
    let first = |c: &[usize]| c[0];
    let offs: Vec<Vec<usize>> = chains.iter().map(|cs| offsets(f, cs, first)).collect();
    let blocks: Vec<Vec<(String, PresentedAbGroup)>> = chains
        .iter()
        .map(|cs| {
            cs.chains
                .iter()
                .map(|c| (label(f, c, ">"), f.value(c[0]).clone()))
                .collect()
        })
        .collect();
    let gens = |k: usize| blocks[k].iter().map(|(_, g)| g.generators()).sum::<usize>();
    let mut differentials = Vec::new();
    for n in 1..chains.len() {
        let index = chains[n - 1].position_map();
        let mut d = Matrix::zeros(gens(n - 1), gens(n));
        for (k, chain) in chains[n].chains.iter().enumerate() {
            let col = offs[n][k];
            let face = &chain[1..];
            let m = f.map(chain[0], chain[1]).expect("chain is decreasing");
            d.add_block(offs[n - 1][index[face]], col, m);
            for i in 1..=n {
                let mut face = chain.clone();
                face.remove(i);
                let id = Matrix::identity(f.value(chain[0]).generators()).scale(&sign(i));
                d.add_block(offs[n - 1][index[face.as_slice()]], col, &id);
            }
        }
        differentials.push(d);
    }
    Complex::from_blocks(Grading::Chain, blocks, differentials)
}

/// `colim_n F`.
pub fn derived_colimit(f: &Diagram, n: usize) -> Result<CanonicalGroup> {
    if n > f.base().longest_chain_length() {
        return Ok(CanonicalGroup::zero());
    }
    let c = colimit_complex(f, n + 1)?;
    Ok(c.homology(n)?.canonical_form())
}
