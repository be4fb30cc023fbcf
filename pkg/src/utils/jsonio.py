import json
import os
import tempfile
from pathlib import Path
from typing import Any, Union


def dumps_canonical(data: Any) -> str:
    """UTF-8 friendly JSON with sorted keys and a trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def compact_canonical(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def write_atomic(path: Union[str, Path], text: str) -> None:
    """Write through a temporary file in the target directory, then rename over the target."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f'.{target.name}.', suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_json(path: Union[str, Path], data: Any) -> None:
    write_atomic(path, dumps_canonical(data))


def read_json(path: Union[str, Path]) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)
