"""Intrinsic schwarzians of circle packings: flowers, labels and layouts."""

from .errors import SfkitError
from .geom import (INF, Circle, GenCircle, Line, Mobius, apply_mobius, circle_distance,
                   mobius_from_points, normalize_mobius, tangency_point)
from .schwarzian import (BASE_F, BASE_G, BASE_PATCH, FaceTriple, Patch, edge_derivative,
                         intrinsic_schwarzian, place_face, schwarzian_transfer)
from .flower import (FlowerClass, NormalizedFlower, ULabel, classify_flower, complete_label,
                     flower_from_radii, layout_flower, u_fn, verify_packing_label, wrap_count)
from .families import (doyle, doyle_radii, extremal_label, hexagon_partner, ring_flower,
                       ring_label, soccerball_labels, soccerball_packing_labels,
                       uniform_flower, uniform_schwarzian)
from .complexpack import (EdgeLabel, PackingLayout, TriComplex, angle_sum, angle_sums,
                          build_complex, check_packing_label, layout_complex,
                          soccerball_complex, soccerball_label)
from .svg import render_svg

__version__ = "0.1.0"
