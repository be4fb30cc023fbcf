import hashlib
import json
from pathlib import Path

DATA_DIR = Path(__file__).parent / 'data'
PINNED = ('corpus.json', 'sporadic_orders.json', 'sz8.gens.json')


def pin_data(data_dir: Path = DATA_DIR):
    """Record the SHA-256 of every bundled data file in data/manifest.json."""
    files = {}
    for name in PINNED:
        digest = hashlib.sha256((data_dir / name).read_bytes()).hexdigest()
        files[name] = digest
        print(f"{name}: {digest}")
    manifest = data_dir / 'manifest.json'
    with open(manifest, 'w', encoding='utf-8', newline='\n') as f:
        f.write(json.dumps({'files': files}, sort_keys=True, indent=2) + '\n')
    print(f"Updated {manifest}")
    return True


if __name__ == '__main__':
    pin_data()
