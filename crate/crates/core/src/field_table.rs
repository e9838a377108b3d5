// (p, k, low coefficients c0..c_{k-1} of a monic primitive polynomial of degree k)
// Each entry is the first primitive polynomial when low coefficient vectors are
// read as base-p integers with c0 least significant.
pub(crate) const REDUCTION_POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 2, &[2, 1]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (5, 2, &[2, 1]),
    (5, 3, &[2, 3, 0]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 5, &[2, 4, 0, 0, 0]),
    (7, 2, &[3, 1]),
    (7, 3, &[2, 3, 0]),
    (7, 4, &[5, 3, 1, 0]),
    (11, 2, &[7, 1]),
    (11, 3, &[4, 1, 0]),
    (13, 2, &[2, 1]),
    (13, 3, &[6, 1, 0]),
    (17, 2, &[3, 1]),
    (17, 3, &[3, 1, 0]),
    (19, 2, &[2, 1]),
    (19, 3, &[4, 1, 0]),
    (23, 2, &[7, 1]),
    (29, 2, &[3, 1]),
    (31, 2, &[12, 1]),
    (37, 2, &[5, 1]),
    (41, 2, &[12, 1]),
    (43, 2, &[3, 1]),
    (47, 2, &[13, 1]),
    (53, 2, &[5, 1]),
    (59, 2, &[2, 1]),
    (61, 2, &[2, 1]),
    (67, 2, &[12, 1]),
    (71, 2, &[11, 1]),
    (73, 2, &[11, 1]),
    (79, 2, &[3, 1]),
    (83, 2, &[2, 1]),
    (89, 2, &[6, 1]),
];
