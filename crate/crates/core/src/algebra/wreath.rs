use super::projective::perm_from_fn;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathMode {
    Imprimitive,
    ProductAction,
}

/// S_m wr S_2, on 2m points (blocks 0..m and m..2m) or on the m x m grid.
pub fn wreath_product(m: usize, mode: WreathMode) -> Result<PermGroup> {
    if m < 2 {
        return Err(Error::InvalidArgument("wreath product needs m >= 2".into()));
    }
    let cycle = |x: usize| (x + 1) % m;
    let swap01 = |x: usize| match x {
        0 => 1,
        1 => 0,
        _ => x,
    };
    let (n, gens, name) = match mode {
        WreathMode::Imprimitive => {
            let n = 2 * m;
            let gens = vec![
                perm_from_fn(n, |x| if x < m { cycle(x) } else { x })?,
                perm_from_fn(n, |x| if x < m { swap01(x) } else { x })?,
                perm_from_fn(n, |x| (x + m) % n)?,
            ];
            (n, gens, format!("S{}wrS2", m))
        }
        WreathMode::ProductAction => {
            let n = m * m;
            let gens = vec![
                perm_from_fn(n, |x| cycle(x / m) * m + x % m)?,
                perm_from_fn(n, |x| swap01(x / m) * m + x % m)?,
                perm_from_fn(n, |x| (x % m) * m + x / m)?,
            ];
            (n, gens, format!("S{}wrS2(product)", m))
        }
    };
    Ok(PermGroup::new(n, gens)?.with_name(name))
}

/// H on n-1 points extended by a new fixed point labelled last.
pub fn point_fixing_extension(h: &PermGroup) -> PermGroup {
    let n = h.degree() + 1;
    let gens: Vec<Permutation> = h.generators().iter().map(|g| g.extend(n)).collect();
    let g = PermGroup::new(n, gens).unwrap();
    match h.name() {
        Some(s) => g.with_name(format!("{}+fix", s)),
        None => g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn wreath_examples() {
        let w = wreath_product(3, WreathMode::Imprimitive).unwrap();
        assert_eq!((w.degree(), w.order()), (6, BigUint::from(72u32)));
        let w2 = wreath_product(2, WreathMode::Imprimitive).unwrap();
        assert_eq!(w2.order(), BigUint::from(8u32));
        let p = wreath_product(4, WreathMode::ProductAction).unwrap();
        assert_eq!(p.degree(), 16);
        assert!(p.is_transitive());
        assert!(p.orbital_graphs().len() >= 2);
        assert_eq!(p.order(), BigUint::from(24u32 * 24 * 2));
    }

    #[test]
    fn fixing_extension() {
        let g = point_fixing_extension(&PermGroup::symmetric(5));
        assert_eq!(g.degree(), 6);
        let sizes: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
        assert_eq!(sizes, vec![5, 1]);
        assert_eq!(g.fixed_points(), vec![5]);
    }
}
