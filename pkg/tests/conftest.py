import pytest

from kantkb.dao import BackendConfig, BackendKind, create_dao_family

BACKENDS = ("memory", "docstore")


def make_config(backend: str, tmp_path, tag: str = "store") -> BackendConfig:
    if backend == "memory":
        return BackendConfig(BackendKind.MEMORY)
    return BackendConfig(BackendKind.DOCSTORE, location=str(tmp_path / tag))


@pytest.fixture(params=BACKENDS)
def backend_name(request):
    return request.param


@pytest.fixture
def family(backend_name, tmp_path):
    fam = create_dao_family(make_config(backend_name, tmp_path))
    yield fam
    fam.close()


@pytest.fixture
def fresh_family(tmp_path):
    """Factory for extra families; every store gets its own directory."""
    opened = []
    counter = [0]

    def build(backend: str = "memory", tag: str | None = None):
        counter[0] += 1
        fam = create_dao_family(
            make_config(backend, tmp_path, tag or f"store{counter[0]}")
        )
        opened.append(fam)
        return fam

    yield build
    for fam in opened:
        try:
            fam.close()
        except Exception:
            pass
