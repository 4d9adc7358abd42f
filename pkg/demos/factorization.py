"""Glued spaces, their morphisms, and the (epi, mono) factorization."""

from gluemin import (
    GluedMorphism, Matrix, Point, embed_vec, factor, glue, is_epi, is_mono, make_space,
    morphism_compose, morphism_equal, point_eq,
)

at0 = glue([1, 1], [(0, 1, [], [[0]])])
loose = make_space([1, 1])
print("two lines glued at 0: (0,[0]) == (1,[0])?", point_eq(at0, Point(0, (0,)), Point(1, (0,))))
print("two loose lines:      (0,[0]) == (1,[0])?", point_eq(loose, Point(0, (0,)), Point(1, (0,))))

# The axes of the plane.  Glued at 0 this is injective on points; unglued the
# two origins collide.
axes = ((0, Matrix.of([[1], [0]])), (0, Matrix.of([[0], [1]])))
print("\naxes from glued lines mono?", is_mono(GluedMorphism(at0, embed_vec(2), axes)))
print("axes from loose lines mono?", is_mono(GluedMorphism(loose, embed_vec(2), axes)))

# Factor a map that collapses things: both lines onto the same line of Q^2,
# one of them with a scaling.
m = GluedMorphism(loose, embed_vec(2), ((0, Matrix.of([[1], [1]])), (0, Matrix.of([[2], [2]]))))
e, image, mo = factor(m)
print("\nfactor: image has components", image.components, "gluings", image.gluings)
print("e epi:", is_epi(e), " mo mono:", is_mono(mo), " mo.e == m:", morphism_equal(morphism_compose(mo, e), m))
