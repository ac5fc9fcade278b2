# This file is intentionally left empty to make the tests directory a proper Python package. 