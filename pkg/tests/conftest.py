"""Shared fixtures: the bundled example databases."""

from pathlib import Path

import pytest

from fuzzyrel import load_database, load_matrix

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def survey_db():
    return load_database(DATA / "survey")


@pytest.fixture(scope="session")
def arson_db():
    return load_database(DATA / "arson")


@pytest.fixture(scope="session")
def suppliers_db():
    return load_database(DATA / "suppliers")


@pytest.fixture(scope="session")
def gb_db():
    return load_database(DATA / "gb")


@pytest.fixture(scope="session")
def effect_matrix():
    return load_matrix(DATA / "survey" / "effect_matrix.csv")


@pytest.fixture(scope="session")
def hair_matrix():
    return load_matrix(DATA / "arson" / "hair_matrix.csv")


@pytest.fixture(scope="session")
def build_matrix():
    return load_matrix(DATA / "arson" / "build_matrix.csv")
