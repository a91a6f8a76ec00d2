from uhusiano.create.create import CreateScheme
from uhusiano.review.review import ReviewScheme
from uhusiano.models.config import RunConfig

__version__ = "0.1.0"
