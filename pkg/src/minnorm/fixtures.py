"""Built-in demonstration datasets (input-document dictionaries, 1-based)."""

import math


def pyramid() -> dict:
    """Four points from a regular triangular pyramid, apex pulled down."""
    s3 = math.sqrt(3.0)
    return {
        "points": [
            {"x": -0.5, "y": -s3 / 6.0, "z": 0.0},
            {"x": 0.5, "y": -s3 / 6.0, "z": 0.0},
            {"x": 0.0, "y": s3 / 3.0, "z": 0.0},
            {"x": 0.0, "y": 0.0, "z": -0.5},
        ],
        "triangles": [[1, 2, 4], [2, 4, 3], [4, 1, 3]],
    }


def seven_point() -> dict:
    """Seven points with two interior fans; 14 edges, vertex degrees 3..5."""
    return {
        "points": [
            {"x": -2.0, "y": 0.0, "z": 0.0},
            {"x": -1.6, "y": 0.0, "z": -2.0},
            {"x": 0.0, "y": 0.0, "z": -3.0},
            {"x": 1.6, "y": 0.0, "z": -2.5},
            {"x": 2.0, "y": 0.0, "z": 0.0},
            {"x": -0.5, "y": 2.3, "z": -1.7},
            {"x": 0.5, "y": -2.0, "z": -1.9},
        ],
        "triangles": [
            [1, 2, 6], [2, 3, 6], [3, 4, 6], [4, 5, 6],
            [1, 2, 7], [2, 3, 7], [3, 4, 7], [4, 5, 7],
        ],
    }


FIXTURES = {
    "pyramid": pyramid,
    "seven-point": seven_point,
}
