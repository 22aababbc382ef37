"""Six small extensions covering A abelian or not and f central or not."""

import numpy as np

from steinerlike.extension import ExtensionSpec, spec_from_weighted
from steinerlike.steiner import klein
from steinerlike.tables import direct_product, make_group, named_group
from steinerlike.weighted import WeightedSteinerLoop


def six_specs():
    k, s2 = klein(), make_group("cyclic", n=2)
    z4, s3 = named_group("Z4"), named_group("S3")
    s3z2 = direct_product(s3, s2)       # index 1 is (e, 1), central
    return {
        "klein_z4_direct": ExtensionSpec(k, z4, np.zeros((4, 4), int)),
        "s2_z4_square": ExtensionSpec(s2, z4, np.array([[0, 0], [0, 2]])),
        "klein_s3z2_central": spec_from_weighted(WeightedSteinerLoop(k, s3z2, [1, 1, 1], [1, 1, 1])),
        "s2_s3_transposition": ExtensionSpec(s2, s3, np.array([[0, 0], [0, 1]])),
        "s2_s3_three_cycle": ExtensionSpec(s2, s3, np.array([[0, 0], [0, 3]])),
        "klein_s3_transpositions": spec_from_weighted(WeightedSteinerLoop(k, s3, [1, 2, 5], [0, 0, 0])),
    }


SPECS = six_specs()


def f_central(spec):
    return bool(spec.a.center_mask[spec.f].all())
