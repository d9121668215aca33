use std::sync::Arc;

use super::{ElemSet, PermGroup, Permutation};
use crate::{Error, Result};

/// A group homomorphism given by generator images, with the full element map
/// materialized and checked for multiplicativity.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<PermGroup>,
    target: Arc<PermGroup>,
    generator_images: Vec<Permutation>,
    map: Vec<u32>,
    kernel: ElemSet,
}

impl Homomorphism {
    /// `generator_images[i]` is the image of `source.generators()[i]`.
    pub fn new(
        source: Arc<PermGroup>,
        target: Arc<PermGroup>,
        generator_images: Vec<Permutation>,
    ) -> Result<Self> {
        if generator_images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                source.generators().len()
            )));
        }
        let image_idx = generator_images
            .iter()
            .map(|p| {
                target
                    .index_of(p)
                    .ok_or_else(|| Error::NotHomomorphism(format!("{p} is not in the target group")))
            })
            .collect::<Result<Vec<_>>>()?;
        // Walk the Cayley graph of the source; consistency on every generator
        // edge makes the map multiplicative.
        let n = source.order();
        let mut map = vec![u32::MAX; n];
        map[PermGroup::IDENTITY as usize] = PermGroup::IDENTITY;
        let mut queue = vec![PermGroup::IDENTITY];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &s) in source.generator_indices().iter().enumerate() {
                let y = source.mul(s, x);
                let fy = target.mul(image_idx[k], map[x as usize]);
                if map[y as usize] == u32::MAX {
                    map[y as usize] = fy;
                    queue.push(y);
                } else if map[y as usize] != fy {
                    return Err(Error::NotHomomorphism(format!(
                        "relation violated at {}",
                        source.element(y)
                    )));
                }
            }
            i += 1;
        }
        let kernel = ElemSet::from_indices(
            n,
            (0..n as u32).filter(|&x| map[x as usize] == PermGroup::IDENTITY),
        );
        Ok(Homomorphism {
            source,
            target,
            generator_images,
            map,
            kernel,
        })
    }

    pub fn identity(g: Arc<PermGroup>) -> Self {
        let images = g.generators().to_vec();
        Self::new(g.clone(), g, images).expect("identity is a homomorphism")
    }

    /// Inclusion of a subgroup that was realized with the same point set.
    pub fn inclusion(sub: Arc<PermGroup>, parent: Arc<PermGroup>) -> Result<Self> {
        let images = sub.generators().to_vec();
        Self::new(sub, parent, images)
    }

    pub fn source(&self) -> &Arc<PermGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PermGroup> {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    pub fn kernel(&self) -> &ElemSet {
        &self.kernel
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    pub fn image_of_set(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.target.order(), set.iter().map(|x| self.apply(x)))
    }

    pub fn image(&self) -> ElemSet {
        self.image_of_set(&self.source.full_set())
    }

    pub fn preimage_of_set(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(
            self.source.order(),
            (0..self.source.order() as u32).filter(|&x| set.contains(self.apply(x))),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }
}

/// `G/N` realized by the action of `G` on the left cosets of `N`, together
/// with the projection. Cosets are numbered by their least element.
pub fn quotient_group(g: &Arc<PermGroup>, normal: &ElemSet) -> Result<(Arc<PermGroup>, Homomorphism)> {
    if !g.is_subgroup(normal) {
        return Err(Error::NotSubgroup(format!("{normal:?}")));
    }
    if !g.is_normal(normal) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut count = 0u32;
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        for k in normal.iter() {
            coset_of[g.mul(x, k) as usize] = count;
        }
        count += 1;
    }
    let reps: Vec<u32> = {
        let mut r = vec![u32::MAX; count as usize];
        for x in (0..n as u32).rev() {
            r[coset_of[x as usize] as usize] = x;
        }
        r
    };
    let degree = count as usize;
    let images: Vec<Permutation> = g
        .generator_indices()
        .iter()
        .map(|&s| {
            Permutation::from_images_unchecked(
                reps.iter().map(|&r| coset_of[g.mul(s, r) as usize]).collect(),
            )
        })
        .collect();
    let q = Arc::new(PermGroup::from_generators(degree, images.clone(), g.caps())?);
    let proj = Homomorphism::new(g.clone(), q.clone(), images)?;
    debug_assert_eq!(proj.kernel(), normal);
    Ok((q, proj))
}

/// Direct product on the disjoint union of the two point sets.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: Arc<PermGroup>,
    pub left: Arc<PermGroup>,
    pub right: Arc<PermGroup>,
}

impl DirectProduct {
    pub fn new(left: Arc<PermGroup>, right: Arc<PermGroup>) -> Result<Self> {
        let (n1, n2) = (left.degree(), right.degree());
        let total = n1 + n2;
        let gens: Vec<Permutation> = left
            .generators()
            .iter()
            .map(|g| g.shifted(0, total))
            .chain(right.generators().iter().map(|g| g.shifted(n1, total)))
            .collect();
        let caps = left.caps();
        let group = PermGroup::from_generators(total, gens, caps)?
            .with_label(format!("product({}, {})", left.label(), right.label()));
        Ok(DirectProduct {
            group: Arc::new(group),
            left,
            right,
        })
    }

    /// Index of `(a, b)` in the product.
    pub fn pair(&self, a: u32, b: u32) -> u32 {
        let pa = self.left.element(a);
        let pb = self.right.element(b);
        let n1 = pa.degree();
        let images: Vec<u32> = pa
            .images()
            .iter()
            .copied()
            .chain(pb.images().iter().map(|&x| x + n1 as u32))
            .collect();
        self.group
            .index_of(&Permutation::from_images_unchecked(images))
            .expect("pair of factor elements lies in the product")
    }

    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.group.order());
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.pair(x, y));
            }
        }
        out
    }
}
