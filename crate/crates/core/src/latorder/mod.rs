//! Quadratic orders and their lattice ideals.

mod ideal;
mod lattice;
mod order;
mod profile;

pub use ideal::{
    lat_arith, lat_v_closure, primes_up_to_norm, random_elem, random_ideal, t_invertible, LatIdeal,
    LatOp, TInvertibility,
};
pub use order::{QuadElem, QuadOrder};
pub use profile::{
    ass_wass_witness, lat_conductor, prime_profile, prime_profile_bounded, profile_primes,
    AssWitness, PrimeProfile, DEFAULT_SEARCH_BOUND,
};
