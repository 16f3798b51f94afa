from __future__ import annotations

import pytest

from corona_lab.spaces import SPACE_NAMES, make_builtin_space


@pytest.fixture(params=SPACE_NAMES)
def any_space(request):
    return make_builtin_space(request.param)


EXACT_SPACES = ("discrete", "bounded_line", "phi_sequence", "seminorm_function")
PLANAR_SPACES = ("euclidean_plane", "punctured_plane_x1", "closed_punctured_x2")
