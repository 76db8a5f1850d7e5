//! Words over the generators `i₁`, `e₁`, `b₁,₁` and their realization.

use std::fmt;

use super::{compose, tensor, BrauerError, BrauerMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `i₁: [0] -> [2]`
    Unit,
    /// `e₁: [2] -> [0]`
    Counit,
    /// `b₁,₁: [2] -> [2]`
    Braid,
}

impl Generator {
    pub fn morphism(self) -> BrauerMorphism {
        match self {
            Generator::Unit => BrauerMorphism::i1(),
            Generator::Counit => BrauerMorphism::e1(),
            Generator::Braid => BrauerMorphism::b11(),
        }
    }

    pub fn dom(self) -> usize {
        match self {
            Generator::Unit => 0,
            Generator::Counit | Generator::Braid => 2,
        }
    }

    pub fn cod(self) -> usize {
        match self {
            Generator::Counit => 0,
            Generator::Unit | Generator::Braid => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorWord {
    Gen(Generator),
    Id(usize),
    /// `Compose(w2, w1)` is `w2 ∘ w1`.
    Compose(Box<GeneratorWord>, Box<GeneratorWord>),
    Tensor(Box<GeneratorWord>, Box<GeneratorWord>),
}

impl GeneratorWord {
    pub fn unit() -> Self {
        GeneratorWord::Gen(Generator::Unit)
    }

    pub fn counit() -> Self {
        GeneratorWord::Gen(Generator::Counit)
    }

    pub fn braid() -> Self {
        GeneratorWord::Gen(Generator::Braid)
    }

    pub fn id(k: usize) -> Self {
        GeneratorWord::Id(k)
    }

    /// `self ∘ first`
    pub fn after(self, first: GeneratorWord) -> Self {
        GeneratorWord::Compose(Box::new(self), Box::new(first))
    }

    pub fn tensor(self, right: GeneratorWord) -> Self {
        GeneratorWord::Tensor(Box::new(self), Box::new(right))
    }

    /// Left-to-right composition chain: `layers[0]` is applied first.
    pub fn chain(layers: impl IntoIterator<Item = GeneratorWord>) -> Option<Self> {
        layers.into_iter().reduce(|acc, next| next.after(acc))
    }

    /// Tensor product of several words, left to right.
    pub fn tensor_all(parts: impl IntoIterator<Item = GeneratorWord>) -> Option<Self> {
        parts.into_iter().reduce(|acc, next| acc.tensor(next))
    }

    /// `λ = e₁ ∘ i₁`.
    pub fn loop_word() -> Self {
        Self::counit().after(Self::unit())
    }

    pub fn dom(&self) -> Result<usize, BrauerError> {
        Ok(self.typ()?.0)
    }

    pub fn cod(&self) -> Result<usize, BrauerError> {
        Ok(self.typ()?.1)
    }

    fn typ(&self) -> Result<(usize, usize), BrauerError> {
        match self {
            GeneratorWord::Gen(g) => Ok((g.dom(), g.cod())),
            GeneratorWord::Id(k) => Ok((*k, *k)),
            GeneratorWord::Compose(w2, w1) => {
                let (a, b) = w1.typ()?;
                let (c, d) = w2.typ()?;
                if b != c {
                    return Err(BrauerError::ObjectMismatch { codomain: b, domain: c });
                }
                Ok((a, d))
            }
            GeneratorWord::Tensor(w1, w2) => {
                let (a, b) = w1.typ()?;
                let (c, d) = w2.typ()?;
                Ok((a + c, b + d))
            }
        }
    }

    /// The realization `|w|`.
    pub fn evaluate(&self) -> Result<BrauerMorphism, BrauerError> {
        match self {
            GeneratorWord::Gen(g) => Ok(g.morphism()),
            GeneratorWord::Id(k) => Ok(BrauerMorphism::identity(*k)),
            GeneratorWord::Compose(w2, w1) => compose(&w2.evaluate()?, &w1.evaluate()?),
            GeneratorWord::Tensor(w1, w2) => Ok(tensor(&w1.evaluate()?, &w2.evaluate()?)),
        }
    }

    /// Bottom-up evaluation into any target that interprets the leaves,
    /// composition and tensor.
    pub fn fold<T, E>(
        &self,
        leaf_gen: &impl Fn(Generator) -> Result<T, E>,
        leaf_id: &impl Fn(usize) -> Result<T, E>,
        compose: &impl Fn(T, T) -> Result<T, E>,
        tensor: &impl Fn(T, T) -> Result<T, E>,
    ) -> Result<T, E> {
        match self {
            GeneratorWord::Gen(g) => leaf_gen(*g),
            GeneratorWord::Id(k) => leaf_id(*k),
            GeneratorWord::Compose(w2, w1) => {
                let first = w1.fold(leaf_gen, leaf_id, compose, tensor)?;
                let second = w2.fold(leaf_gen, leaf_id, compose, tensor)?;
                compose(second, first)
            }
            GeneratorWord::Tensor(w1, w2) => {
                let left = w1.fold(leaf_gen, leaf_id, compose, tensor)?;
                let right = w2.fold(leaf_gen, leaf_id, compose, tensor)?;
                tensor(left, right)
            }
        }
    }
}

pub fn evaluate_word(w: &GeneratorWord) -> Result<BrauerMorphism, BrauerError> {
    w.evaluate()
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorWord::Gen(Generator::Unit) => write!(f, "i1"),
            GeneratorWord::Gen(Generator::Counit) => write!(f, "e1"),
            GeneratorWord::Gen(Generator::Braid) => write!(f, "b"),
            GeneratorWord::Id(k) => write!(f, "1_{k}"),
            GeneratorWord::Compose(w2, w1) => write!(f, "({w2} o {w1})"),
            GeneratorWord::Tensor(w1, w2) => write!(f, "({w1} x {w2})"),
        }
    }
}

/// Adjacent transposition layer `1_j ⊗ b ⊗ 1_{width - j - 2}`.
fn swap_layer(width: usize, j: usize) -> GeneratorWord {
    let parts = [
        (j > 0).then(|| GeneratorWord::id(j)),
        Some(GeneratorWord::braid()),
        (width > j + 2).then(|| GeneratorWord::id(width - j - 2)),
    ];
    GeneratorWord::tensor_all(parts.into_iter().flatten()).expect("braid present")
}

/// Bubble-sort a permutation into adjacent transpositions; `perm[x]` is the
/// output position of input `x`. Returns the layers in application order.
fn permutation_layers(perm: &[usize]) -> Vec<GeneratorWord> {
    let width = perm.len();
    // cur[pos] = input strand currently sitting at `pos`
    let mut cur: Vec<usize> = (0..width).collect();
    let mut layers = Vec::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for j in 0..width.saturating_sub(1) {
            if perm[cur[j]] > perm[cur[j + 1]] {
                cur.swap(j, j + 1);
                layers.push(swap_layer(width, j));
                swapped = true;
            }
        }
    }
    layers
}

fn permutation_word(perm: &[usize]) -> Option<GeneratorWord> {
    GeneratorWord::chain(permutation_layers(perm))
}

/// A word realizing `f`, of the shape
/// `λ^{⊗loops} ⊗ (β ∘ (1 ⊗ e₁^{⊗p} ⊗ i₁^{⊗q}) ∘ α)` with `α`, `β` products of
/// adjacent transpositions. Empty factors are omitted.
pub fn decompose_to_word(f: &BrauerMorphism) -> GeneratorWord {
    let (m, n) = (f.dom(), f.cod());
    let partner = f.partner();

    // Input order for the middle layer: through strands (by input index), then cups.
    let mut through = Vec::new();
    let mut cups = Vec::new();
    for i in 0..m {
        let j = partner[i];
        if j >= m {
            through.push((i, j - m));
        } else if i < j {
            cups.push((i, j));
        }
    }
    let caps: Vec<(usize, usize)> = (0..n)
        .filter_map(|k| {
            let j = partner[m + k];
            (j >= m && k < j - m).then(|| (k, j - m))
        })
        .collect();
    let (t, p, q) = (through.len(), cups.len(), caps.len());

    // α: input x -> position in the middle layer's domain
    let mut alpha = vec![0; m];
    for (pos, &(i, _)) in through.iter().enumerate() {
        alpha[i] = pos;
    }
    for (c, &(a, b)) in cups.iter().enumerate() {
        alpha[a] = t + 2 * c;
        alpha[b] = t + 2 * c + 1;
    }
    // β: position in the middle layer's codomain -> output of f
    let mut beta = vec![0; n];
    for (pos, &(_, out)) in through.iter().enumerate() {
        beta[pos] = out;
    }
    for (c, &(a, b)) in caps.iter().enumerate() {
        beta[t + 2 * c] = a;
        beta[t + 2 * c + 1] = b;
    }

    let middle_parts = (t > 0)
        .then(|| GeneratorWord::id(t))
        .into_iter()
        .chain(std::iter::repeat_n(GeneratorWord::counit(), p))
        .chain(std::iter::repeat_n(GeneratorWord::unit(), q));
    let middle = GeneratorWord::tensor_all(middle_parts);

    let body = GeneratorWord::chain(
        permutation_word(&alpha)
            .into_iter()
            .chain(middle)
            .chain(permutation_word(&beta)),
    );
    let loops = GeneratorWord::tensor_all(std::iter::repeat_n(GeneratorWord::loop_word(), f.loops()));

    match (loops, body) {
        (Some(l), Some(b)) => l.tensor(b),
        (Some(l), None) => l,
        (None, Some(b)) => b,
        (None, None) => GeneratorWord::id(0),
    }
}

/// A defining relation `lhs = rhs` of the presentation.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: GeneratorWord,
    pub rhs: GeneratorWord,
}

/// (B1)–(B5), each two-sided relation split into its halves, plus the
/// symmetry identities `e₁ ∘ b = e₁` and `b ∘ i₁ = i₁`.
pub fn relations() -> Vec<Relation> {
    use GeneratorWord as W;
    let one = || W::id(1);
    let (i, e, b) = (W::unit, W::counit, W::braid);
    let chain = |ws: Vec<W>| W::chain(ws).expect("nonempty");
    vec![
        Relation { name: "B1 zig-zag (left)", lhs: chain(vec![i().tensor(one()), one().tensor(e())]), rhs: one() },
        Relation { name: "B1 zig-zag (right)", lhs: chain(vec![one().tensor(i()), e().tensor(one())]), rhs: one() },
        Relation {
            name: "B2 twisted zig-zag (left)",
            lhs: chain(vec![
                one().tensor(one()).tensor(i()),
                one().tensor(b()).tensor(one()),
                e().tensor(one()).tensor(one()),
            ]),
            rhs: b(),
        },
        Relation {
            name: "B2 twisted zig-zag (right)",
            lhs: chain(vec![
                i().tensor(one()).tensor(one()),
                one().tensor(b()).tensor(one()),
                one().tensor(one()).tensor(e()),
            ]),
            rhs: b(),
        },
        Relation {
            name: "B3 Reidemeister I (left)",
            lhs: chain(vec![one().tensor(i()), b().tensor(one()), one().tensor(e())]),
            rhs: one(),
        },
        Relation {
            name: "B3 Reidemeister I (right)",
            lhs: chain(vec![i().tensor(one()), one().tensor(b()), e().tensor(one())]),
            rhs: one(),
        },
        Relation { name: "B4 Reidemeister II", lhs: chain(vec![b(), b()]), rhs: one().tensor(one()) },
        Relation {
            name: "B5 Yang-Baxter",
            lhs: chain(vec![b().tensor(one()), one().tensor(b()), b().tensor(one())]),
            rhs: chain(vec![one().tensor(b()), b().tensor(one()), one().tensor(b())]),
        },
        Relation { name: "symmetry e1 o b = e1", lhs: e().after(b()), rhs: e() },
        Relation { name: "symmetry b o i1 = i1", lhs: b().after(i()), rhs: i() },
    ]
}

#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: &'static str,
    pub lhs: Result<BrauerMorphism, BrauerError>,
    pub rhs: Result<BrauerMorphism, BrauerError>,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Evaluates both sides of every relation at the diagram level.
pub fn verify_relations() -> RelationReport {
    let checks = relations()
        .into_iter()
        .map(|r| {
            let lhs = r.lhs.evaluate();
            let rhs = r.rhs.evaluate();
            let holds = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
            RelationCheck { name: r.name, lhs, rhs, holds }
        })
        .collect();
    RelationReport { checks }
}
