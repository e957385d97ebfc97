"""
Fixture Generation Script

カタログと標準分解から fixtures/ 以下の JSON 文書を書き出します。
シリアライザの出力形式を変えたときに実行してください。
"""

from pathlib import Path

from blocks.cli_io.documents import serialize_ring, serialize_surface
from blocks.fusion_core.catalog import catalog
from blocks.surface_model.models import BoundaryCircle, Orientation, Surface
from blocks.surface_model.operations import canonical_decomposition

# 出力先
FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# 書き出す融合環
RINGS = ["trivial", "ising", "fibonacci", "z2_boson"]


def surfaces() -> dict[str, bytes]:
    """曲面の文書（分解を含めるものは標準分解を使う）"""
    pants = Surface.connected(
        0,
        [
            BoundaryCircle(Orientation.INDUCED, "sigma"),
            BoundaryCircle(Orientation.INDUCED, "sigma"),
            BoundaryCircle(Orientation.REVERSED, "psi"),
        ],
    )
    chain = Surface.connected(0, "+" * 5)
    return {
        "genus2": serialize_surface(Surface.connected(2)),
        "torus": serialize_surface(Surface.connected(1)),
        "sphere4": serialize_surface(Surface.connected(0, "+" * 4)),
        "pants": serialize_surface(pants, canonical_decomposition(pants)),
        "sphere5_chain": serialize_surface(chain, canonical_decomposition(chain)),
    }


def main() -> None:
    print("=" * 70)
    print("Fixture generation")
    print("=" * 70)
    FIXTURE_DIR.mkdir(exist_ok=True)

    documents = {name: serialize_ring(catalog(name)) for name in RINGS}
    documents.update(surfaces())
    for name, content in documents.items():
        path = FIXTURE_DIR / f"{name}.json"
        changed = not path.exists() or path.read_bytes() != content
        path.write_bytes(content)
        print(f"{'✅ updated' if changed else '   unchanged'}: {path.name}")

    print("=" * 70)


if __name__ == "__main__":
    main()
