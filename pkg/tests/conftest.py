import pytest

from fracdyn import PiecewiseModel, Segment

# Piecewise census fits for two regions (Boston and Manhattan), used by the
# curvature tests and the acceptance suite. Coefficients are the published
# per-period regression equations; period 4 is the linear decline in both.
BOSTON_SEGMENTS = (
    Segment("exponential", 1640, 1742, 7e-15, 1.0247),
    Segment("exponential", 1780, 1870, 3e-21, 1.0324),
    Segment("exponential", 1880, 1920, 3e-10, 1.0187),
    Segment("linear", 1930, 1980, 1e7, -4527.0),
    Segment("exponential", 1990, 2020, 2.5486, 1.0062),
)
MANHATTAN_SEGMENTS = (
    Segment("exponential", 1698, 1756, 7e-12, 1.0203),
    Segment("exponential", 1771, 1840, 5e-27, 1.0405),
    Segment("exponential", 1850, 1910, 7e-14, 1.0239),
    Segment("linear", 1920, 1970, 2e7, -11889.0),
    Segment("exponential", 1980, 2019, 1941.1, 1.0033),
)

# Published curvature-ratio values for the two regions, keyed by period.
BOSTON_ALPHAS = {2: 95.9158, 3: 174.575, 5: 0.403918}
MANHATTAN_ALPHAS = {2: 58.005, 3: 485.729, 5: 0.208647}


@pytest.fixture
def boston_segments():
    return BOSTON_SEGMENTS


@pytest.fixture
def manhattan_segments():
    return MANHATTAN_SEGMENTS


@pytest.fixture
def boston_model():
    return PiecewiseModel(BOSTON_SEGMENTS)


@pytest.fixture
def manhattan_model():
    return PiecewiseModel(MANHATTAN_SEGMENTS)


@pytest.fixture
def boston_alphas():
    return dict(BOSTON_ALPHAS)


@pytest.fixture
def manhattan_alphas():
    return dict(MANHATTAN_ALPHAS)
