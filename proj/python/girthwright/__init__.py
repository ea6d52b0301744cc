from ._girthwright import (
    GirthwrightError,
    PlaneGraph,
    all_connected_planar,
    blocked_colourings_of_s,
    classify,
    colour,
    dump_instance,
    extend,
    find_colouring,
    girth_profile,
    load_instance,
    make_broken_wheel,
    make_wheel,
    random_canvas,
    validate_canvas,
    vertex_girth,
)

__all__ = [
    "GirthwrightError",
    "PlaneGraph",
    "all_connected_planar",
    "blocked_colourings_of_s",
    "classify",
    "colour",
    "dump_instance",
    "extend",
    "find_colouring",
    "girth_profile",
    "load_instance",
    "make_broken_wheel",
    "make_wheel",
    "random_canvas",
    "validate_canvas",
    "vertex_girth",
]
