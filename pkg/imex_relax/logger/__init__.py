from .logger import logger, setup_logger
