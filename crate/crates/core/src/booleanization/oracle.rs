use super::{enumerate_congruences, is_strongly_dense, BooleanizationError, Congruence, Positivity};
use crate::sigma_frame::DistributiveLattice;

/// The coarsest strongly dense congruence, found by enumerating every
/// congruence of `l`.
pub fn smallest_strongly_dense_oracle(
    l: &DistributiveLattice,
    pos: &Positivity,
) -> Result<Congruence, BooleanizationError> {
    pos.check_len(l.len())?;
    let dense: Vec<Congruence> = enumerate_congruences(l)?
        .into_iter()
        .filter(|c| is_strongly_dense(c, pos))
        .collect();
    dense
        .iter()
        .find(|top| dense.iter().all(|c| c.refines(top)))
        .cloned()
        .ok_or(BooleanizationError::NoMaximumFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::booleanization::bool_congruence;
    use crate::generators::{boolean_lattice, chain_lattice, with_nonzero_pos};

    #[test]
    fn oracle_examples() {
        let chain = chain_lattice(2).unwrap();
        let pos = with_nonzero_pos(&chain);
        let c = smallest_strongly_dense_oracle(&chain, &pos).unwrap();
        assert_eq!(c, Congruence::collapsing(3, &[1, 2]));
        assert_eq!(c, bool_congruence(&chain, &pos).unwrap());
        let diamond = boolean_lattice(2).unwrap();
        let c = smallest_strongly_dense_oracle(&diamond, &with_nonzero_pos(&diamond)).unwrap();
        assert_eq!(c, Congruence::identity(4));
        let one = chain_lattice(0).unwrap();
        let c = smallest_strongly_dense_oracle(&one, &with_nonzero_pos(&one)).unwrap();
        assert_eq!(c, Congruence::identity(1));
    }
}
