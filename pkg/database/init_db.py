"""
Database initialization.
Creates all result tables; safe to run repeatedly.
"""
import logging
from database.models import Base
from database.connection import get_engine

logger = logging.getLogger(__name__)

def init_database():
    """Create all database tables"""
    engine = get_engine()
    Base.metadata.create_all(bind=engine)
    logger.info("result tables ready at %s", engine.url)

if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    init_database()
