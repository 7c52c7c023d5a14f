"""Fractal dimension estimation for binary rasters and trend modeling of
dimension time series: box-counting and radial estimators with synthetic
oracles, short-term difference and long-term logistic fits with stability
classification, and piecewise population models compared by curvature."""

__version__ = "0.1.0"

from .boxdim import (
    BoxSchedule,
    DimensionEstimate,
    box_counts,
    cell_counts,
    default_schedule,
    estimate_box_dimension,
)
from .curvature import (
    CurvatureReport,
    alpha_ratios,
    average_curvature,
    average_curvatures,
    compare_similarity,
    pointwise_curvature,
)
from .population import (
    Period,
    PiecewiseModel,
    PopulationSeries,
    Segment,
    fit_piecewise,
    fit_segment,
)
from .radialdim import (
    RadialSchedule,
    counting_center,
    default_radial_schedule,
    estimate_radial_dimension,
    max_valid_radius,
    pixel_counts,
    radial_counts,
)
from .raster import (
    BinaryRaster,
    GrayRaster,
    RasterFormatError,
    Rect,
    binarize,
    crop,
    load_gray,
    occupancy_count,
    to_gray,
    write_pgm,
)
from .regress import LineFit, LogLogSeries, ols_fit
from .synth import (
    disk,
    filled_rect,
    line,
    random_density,
    sierpinski_carpet,
    sierpinski_triangle,
)
from .trend import (
    DifferenceFitResult,
    DifferenceForm,
    DifferenceModelParams,
    DimensionSeries,
    LogisticFitResult,
    LogisticParams,
    MultiStartConfig,
    StabilityClass,
    classify_stability,
    difference_step,
    eval_difference_model,
    fit_difference_model,
    fit_logistic,
    logistic_solution_from_initial,
    logistic_to_difference,
    logistic_value,
    simulate_difference,
)
