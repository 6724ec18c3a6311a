"""Exact asymptotic geometry of divisors on lattice surface models.

The library computes Zariski decompositions, Okounkov-type bodies
(including their limiting, valuative and infinitesimal variants),
Nakayama and Seshadri constants, asymptotic base loci and the chamber
structure of the big and nef cones, all in exact rational arithmetic
over finitely presented Neron-Severi lattice models.
"""

from .chambers import (ChamberSignature, EXTREMAL_RAY, MinkowskiBasisElement,
                       enumerate_zariski_chambers, minkowski_basis,
                       minkowski_chambers, minkowski_decompose,
                       same_stability_chamber, zariski_chamber_signature)
from .cones import (Cone, contains, dual_rays, eff_cone, is_big, is_nef,
                    is_pseudoeffective, minimal_face, nef_cone, sup_threshold)
from .constants import (is_positive_volume_subvariety, nakayama_constant,
                        nakayama_constant_point, seshadri_constant,
                        seshadri_via_body, vol_plus_restricted)
from .lattice import (BUILTIN_NAMES, CurveDecl, DivisorClass, PointSpec,
                      SurfaceModel, blow_up, build_fiber_model, builtin_model,
                      intersect, load_model, model_from_json, model_to_json,
                      save_model, validate_model)
from .okounkov import (AdmissibleFlag, BodyResult, flag_at_point,
                       general_flag, infinitesimal_limiting_body,
                       limiting_body, okounkov_body_big, valuative_body)
from .polytope import (RationalPolygon, area, contains_point,
                       contains_polygon, hull, is_indecomposable,
                       minkowski_sum, scale, similar, translate)
from .zariski import (SDecomposition, WHOLE_SURFACE, ZariskiDecomposition,
                      b_minus, b_plus, kappa_nu, s_decomposition_assemble,
                      volume, zariski_brute, zariski_decompose)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
