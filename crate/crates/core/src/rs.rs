//! Reidemeister–Schreier rewriting and Tietze simplification.

use serde::Serialize;

use crate::coset::CosetTable;
use crate::fp::{abelianization, FreeLetter, ParityHom, Presentation, Word};

pub const DEFAULT_LENGTH_BUDGET: usize = 10_000;

/// Coset representatives along the table's breadth-first spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub representatives: Vec<Word>,
    /// `tree[c][x]`: the edge `c --x-->` belongs to the spanning tree (in
    /// either direction).
    tree: Vec<Vec<bool>>,
}

impl Transversal {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn is_tree_edge(&self, coset: usize, letter: FreeLetter) -> bool {
        self.tree[coset][letter.code()]
    }

    pub fn is_prefix_closed(&self) -> bool {
        let set: std::collections::BTreeSet<&Word> = self.representatives.iter().collect();
        self.representatives.iter().all(|w| {
            (0..w.len()).all(|k| set.contains(&Word::new(w.letters()[..k].iter().copied())))
        })
    }
}

pub fn schreier_transversal(t: &CosetTable) -> Transversal {
    let k = t.index();
    let cols = t.columns();
    let mut reps: Vec<Option<Word>> = vec![None; k];
    let mut tree = vec![vec![false; cols]; k];
    reps[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..cols {
            let l = FreeLetter::from_code(x);
            let d = t.image(c, l);
            if reps[d].is_none() {
                let w = reps[c].as_ref().expect("visited").mul(&Word::new([l]));
                reps[d] = Some(w);
                tree[c][x] = true;
                tree[d][x ^ 1] = true;
                queue.push_back(d);
            }
        }
    }
    Transversal {
        representatives: reps.into_iter().map(|w| w.expect("closed table is connected")).collect(),
        tree,
    }
}

/// The four-coset table of the parity map's kernel, cosets labelled
/// `h + 2 v` before standardization.
pub fn parity_kernel_table(hom: &ParityHom) -> CosetTable {
    let g = hom.sides().len();
    let rows = (0..4u32)
        .map(|c| {
            (0..2 * g)
                .map(|x| c ^ hom.generator_image(x / 2) as u32)
                .collect()
        })
        .collect();
    CosetTable::from_rows(2 * g, rows).expect("parity table is a valid coset table")
}

/// A subgroup presentation together with what each Schreier generator
/// stands for in the parent group.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// `rep(c) x rep(c x)^-1` for the generator `x_c`.
    pub parent_words: Vec<Word>,
    pub transversal: Transversal,
}

/// Schreier generators are the non-tree pairs `(coset, generator)`; each
/// parent relator is rewritten from every coset.
pub fn subgroup_presentation(p: &Presentation, t: &CosetTable) -> SubgroupPresentation {
    let tr = schreier_transversal(t);
    let k = t.index();
    let g = p.generator_count();
    let mut id = vec![vec![usize::MAX; g]; k];
    let mut names = Vec::new();
    let mut parent_words = Vec::new();
    for (c, row) in id.iter_mut().enumerate() {
        for (gen, slot) in row.iter_mut().enumerate() {
            let l = FreeLetter::new(gen, false);
            if tr.is_tree_edge(c, l) {
                continue;
            }
            *slot = names.len();
            names.push(if k == 1 {
                p.generators[gen].clone()
            } else {
                format!("{}_{}", p.generators[gen], c + 1)
            });
            let d = t.image(c, l);
            parent_words.push(
                tr.representatives[c]
                    .mul(&Word::new([l]))
                    .mul(&tr.representatives[d].inverse()),
            );
        }
    }
    let mut relators = Vec::with_capacity(k * p.relator_count());
    for r in &p.relators {
        for c in 0..k {
            relators.push(rewrite(t, &tr, &id, c, r));
        }
    }
    SubgroupPresentation {
        presentation: Presentation::new(names, relators),
        parent_words,
        transversal: tr,
    }
}

fn rewrite(t: &CosetTable, tr: &Transversal, id: &[Vec<usize>], start: usize, w: &Word) -> Word {
    let mut c = start;
    let mut out = Vec::new();
    for &l in w.letters() {
        let d = t.image(c, l);
        if !tr.is_tree_edge(c, l) {
            if l.is_inverse() {
                out.push(FreeLetter::new(id[d][l.generator()], true));
            } else {
                out.push(FreeLetter::new(id[c][l.generator()], false));
            }
        }
        c = d;
    }
    Word::new(out)
}

#[derive(Clone, Copy, Debug)]
pub struct TietzeLimits {
    /// Skip eliminations that would push the total relator length past this.
    pub length_budget: usize,
    /// Stop once this many generators remain.
    pub min_generators: usize,
    /// Also drop duplicate and empty relators at the end. This changes
    /// `r - g`.
    pub drop_redundant: bool,
}

impl Default for TietzeLimits {
    fn default() -> Self {
        TietzeLimits {
            length_budget: DEFAULT_LENGTH_BUDGET,
            min_generators: 0,
            drop_redundant: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TietzeMove {
    pub eliminated: String,
    pub defining_length: usize,
    pub generators: usize,
    pub relators: usize,
    pub total_length: usize,
}

#[derive(Clone, Debug)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub moves: Vec<TietzeMove>,
}

/// Repeatedly eliminates a generator that occurs exactly once in some
/// relator, using the shortest such relator (ties: lowest generator id,
/// then lowest relator position).
pub fn tietze_simplify(p: &Presentation, limits: TietzeLimits) -> TietzeResult {
    let mut gens = p.generators.clone();
    let mut rels: Vec<Word> = p.relators.iter().map(Word::cyclically_reduced).collect();
    let deficiency = rels.len() as i64 - gens.len() as i64;
    let mut moves = Vec::new();
    let mut total: usize = rels.iter().map(Word::len).sum();

    'outer: while gens.len() > limits.min_generators {
        let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
        for (ri, r) in rels.iter().enumerate() {
            let mut counts = vec![0usize; gens.len()];
            for l in r.letters() {
                counts[l.generator()] += 1;
            }
            for (g, &n) in counts.iter().enumerate() {
                if n == 1 {
                    candidates.push((r.len(), g, ri));
                }
            }
        }
        candidates.sort_unstable();
        for (len, g, ri) in candidates {
            let image = defining_word(&rels[ri], g);
            let new_total: usize = rels
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, r)| r.len() + r.occurrences(g) * image.len())
                .sum();
            if new_total > limits.length_budget && new_total > total - len {
                continue;
            }
            rels.remove(ri);
            let map: Vec<usize> = (0..gens.len())
                .map(|i| if i > g { i - 1 } else { i })
                .collect();
            for r in rels.iter_mut() {
                *r = r.substitute(g, &image).cyclically_reduced().renumber(&map);
            }
            let name = gens.remove(g);
            total = rels.iter().map(Word::len).sum();
            assert_eq!(
                rels.len() as i64 - gens.len() as i64,
                deficiency,
                "Tietze move changed r - g"
            );
            moves.push(TietzeMove {
                eliminated: name,
                defining_length: len,
                generators: gens.len(),
                relators: rels.len(),
                total_length: total,
            });
            continue 'outer;
        }
        break;
    }

    if limits.drop_redundant {
        let mut seen = std::collections::BTreeSet::new();
        rels.retain(|r| !r.is_empty() && seen.insert(r.cyclic_canonical()));
    }
    TietzeResult {
        presentation: Presentation::new(gens, rels),
        moves,
    }
}

/// Solves `r = 1` for the single occurrence of generator `g`.
fn defining_word(r: &Word, g: usize) -> Word {
    let pos = r
        .letters()
        .iter()
        .position(|l| l.generator() == g)
        .expect("generator occurs");
    let rotated = r.rotate(pos);
    let rest = Word::new(rotated.letters()[1..].iter().copied());
    if rotated.letters()[0].is_inverse() {
        rest
    } else {
        rest.inverse()
    }
}

pub fn is_perfect(p: &Presentation) -> bool {
    abelianization(p).is_trivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::coset::{enumerate, EnumOptions};
    use crate::fp::{index4_hom, presentation_from_complex};

    fn sigma0() -> (Presentation, CosetTable, SubgroupPresentation) {
        let p = presentation_from_complex(&corpus::sigma());
        let t = parity_kernel_table(&index4_hom(&p).unwrap());
        let sub = subgroup_presentation(&p, &t);
        (p, t, sub)
    }

    #[test]
    fn index_one_is_identity() {
        let p = Presentation::parse(&["x", "y"], &["x^2", "y^3", "x*y*x*y"]).unwrap();
        let t = enumerate(&p.with_relator(Word::generator(0)).with_relator(Word::generator(1)), &[], EnumOptions::default()).unwrap();
        assert_eq!(t.index(), 1);
        let tr = schreier_transversal(&t);
        assert_eq!(tr.representatives, vec![Word::identity()]);
        let sub = subgroup_presentation(&p, &t);
        assert_eq!(sub.presentation.generators, p.generators);
        assert_eq!(sub.presentation.relators, p.relators);
    }

    #[test]
    fn klein_transversal() {
        let p = Presentation::parse(&["x", "y"], &["x^2", "y^2", "x*y*x*y"]).unwrap();
        let t = enumerate(&p, &[], EnumOptions::default()).unwrap();
        let tr = schreier_transversal(&t);
        let text: Vec<String> = tr.representatives.iter().map(|w| p.word_text(w)).collect();
        assert_eq!(text, ["1", "x", "y", "x*y"]);
        assert!(tr.is_prefix_closed());
    }

    #[test]
    fn sigma_parity_transversal() {
        let (p, t, sub) = sigma0();
        let text: Vec<String> = sub
            .transversal
            .representatives
            .iter()
            .map(|w| p.word_text(w))
            .collect();
        assert_eq!(text, ["1", "a1", "b1", "a1*b1"]);
        assert_eq!(t.index(), 4);
    }

    #[test]
    fn counting_formulas() {
        let (_, _, sub) = sigma0();
        assert_eq!(sub.presentation.generator_count(), 4 * 10 - 3);
        assert_eq!(sub.presentation.relator_count(), 4 * 24);
        let l = presentation_from_complex(&corpus::lambda());
        let t = parity_kernel_table(&index4_hom(&l).unwrap());
        let sub = subgroup_presentation(&l, &t);
        assert_eq!(
            (sub.presentation.generator_count(), sub.presentation.relator_count()),
            (21, 36)
        );
    }

    #[test]
    fn rewritten_relators_lift_to_conjugates() {
        let (p, t, sub) = sigma0();
        let k = t.index();
        for (i, r) in sub.presentation.relators.iter().enumerate() {
            let parent = &p.relators[i / k];
            let c = i % k;
            let rep = &sub.transversal.representatives[c];
            let mut lifted = Word::identity();
            for l in r.letters() {
                let w = &sub.parent_words[l.generator()];
                lifted = lifted.mul(&if l.is_inverse() { w.inverse() } else { w.clone() });
            }
            let conj = rep.mul(parent).mul(&rep.inverse());
            assert_eq!(lifted.cyclically_reduced(), conj.cyclically_reduced());
            assert_eq!(t.trace(c, parent), c);
        }
        for w in &sub.parent_words {
            assert_eq!(t.trace(0, w), 0);
        }
    }

    #[test]
    fn eliminate_trivial() {
        let p = Presentation::parse(&["x", "y"], &["y*x^-1"]).unwrap();
        let out = tietze_simplify(&p, TietzeLimits::default());
        assert_eq!(out.presentation.generators.len(), 1);
        assert_eq!(out.presentation.relator_count(), 0);
        // ties go to the lowest id, so x = y is the move applied
        assert_eq!(out.presentation.generators[0], "y");
    }

    #[test]
    fn fixpoint() {
        let p = Presentation::parse(&["x", "y"], &["x^2", "y^3", "x*y*x*y*x*y"]).unwrap();
        let out = tietze_simplify(&p, TietzeLimits::default());
        assert!(out.moves.is_empty());
        assert_eq!(out.presentation, p);
    }

    #[test]
    fn sigma0_simplifies() {
        let (_, _, sub) = sigma0();
        let raw = &sub.presentation;
        let before = abelianization(raw);
        let out = tietze_simplify(raw, TietzeLimits::default());
        let q = &out.presentation;
        assert_eq!(q.relator_count() as i64 - q.generator_count() as i64, 59);
        assert!(q.generator_count() <= 10, "{} generators", q.generator_count());
        assert_eq!(abelianization(q), before);
        assert!(is_perfect(q));
    }

    #[test]
    fn perfectness() {
        assert!(is_perfect(&Presentation::parse(&["x"], &["x"]).unwrap()));
        assert!(!is_perfect(&presentation_from_complex(&corpus::delta())));
    }
}
