import os

import pytest

DEMO_PROJECT = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "src", "testlab", "fixtures", "demo_project",
)


@pytest.fixture(scope="session")
def demo_project_dir():
    return DEMO_PROJECT


@pytest.fixture(scope="session")
def demo_extraction():
    from testlab.metrics.extract import extract_project

    manifest, rows = extract_project(DEMO_PROJECT)
    return manifest, rows


@pytest.fixture(scope="session")
def demo_tables(demo_extraction):
    manifest, rows = demo_extraction
    return manifest, {cid: dict(zip(manifest.names, vec)) for cid, vec in rows}
