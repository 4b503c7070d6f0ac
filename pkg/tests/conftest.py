import pathlib
import sys

from hypothesis import settings

sys.path.insert(0, str(pathlib.Path(__file__).parent))

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40)
settings.load_profile("repo")
