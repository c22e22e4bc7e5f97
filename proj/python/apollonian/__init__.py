"""Integral Apollonian circle packings: exact quadruple algebra, root-quadruple
counting via class numbers, curvature censuses with congruence analysis,
extremal growth words, and SVG rendering."""

from apollonian._core import (  # noqa: F401
    ArithmeticRangeError,
    Census,
    UnsupportedError,
    ValidationError,
    allowed_classes,
    ambiguous_count,
    apply_generator,
    apply_word,
    census,
    class_number,
    count_quadruples,
    count_roots,
    descartes_defect,
    enumerate_reduced_forms,
    enumerate_roots,
    extremal_growth,
    growth_exponent,
    is_descartes,
    is_primitive,
    is_root,
    joint_spectral_radius,
    max_word,
    median_growth_experiment,
    metrics,
    missing_values,
    orbit_partition,
    packing_circles,
    r3_square,
    r3_square_primitive,
    reduce,
    render_svg,
    residue_cover_witness,
    solve_fourth,
    to_binary_form,
    to_lorentz,
    word_to_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
