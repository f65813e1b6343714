# ==============================================================================
# utils/database.py - Sweep store utilities
# ==============================================================================

import logging
import os
from contextlib import contextmanager
from typing import Dict, Iterator, Optional, Tuple

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import Session, sessionmaker

from exceptions import handle_database_error
from models import Base, SweepRecord

logger = logging.getLogger(__name__)


def get_engine(url: str) -> Engine:
    """Create an engine, making the parent directory of a SQLite file if needed"""
    if url.startswith("sqlite:///"):
        path = url[len("sqlite:///"):]
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
    return create_engine(url, future=True)


def init_database(engine: Engine) -> None:
    """Initialize database tables with error handling"""
    try:
        Base.metadata.create_all(bind=engine)
        logger.info("Sweep store tables ready")
    except SQLAlchemyError as e:
        logger.error(f"Error creating sweep store tables: {e}")
        raise handle_database_error(e, "init_database")


@contextmanager
def session_scope(engine: Engine) -> Iterator[Session]:
    """Transactional session: commit on success, rollback on error"""
    session = sessionmaker(bind=engine, future=True)()
    try:
        yield session
        session.commit()
    except SQLAlchemyError as e:
        session.rollback()
        raise handle_database_error(e, "session")
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def reset_database(engine: Engine) -> None:
    """Reset the database (drop and recreate all tables)"""
    try:
        Base.metadata.drop_all(bind=engine)
        Base.metadata.create_all(bind=engine)
        logger.info("Sweep store reset successfully")
    except SQLAlchemyError as e:
        logger.error(f"Error resetting sweep store: {e}")
        raise handle_database_error(e, "reset_database")


class SweepStore:
    """Stored sweep rows keyed by highest weight, valid for one inequality table digest"""

    def __init__(self, engine: Engine, digest: str):
        self.engine = engine
        self.digest = digest
        init_database(engine)

    def load(self) -> Dict[Tuple[int, ...], Tuple[int, float]]:
        """k -> (count, elapsed_ms) for rows computed against the current digest"""
        with session_scope(self.engine) as session:
            records = session.query(SweepRecord).filter(SweepRecord.table_digest == self.digest).all()
            rows = {record.k: (record.count, record.elapsed_ms) for record in records}
        logger.debug(f"Loaded {len(rows)} stored sweep rows")
        return rows

    def save(self, k: Tuple[int, ...], count: int, weyl: int, elapsed_ms: float) -> None:
        with session_scope(self.engine) as session:
            k1, k2, k3, k4 = k
            record: Optional[SweepRecord] = session.get(SweepRecord, (k1, k2, k3, k4))
            if record is None:
                record = SweepRecord(k1=k1, k2=k2, k3=k3, k4=k4)
                session.add(record)
            record.table_digest = self.digest
            record.count = count
            record.weyl = weyl
            record.equal = count == weyl
            record.elapsed_ms = elapsed_ms

    def clear(self) -> None:
        reset_database(self.engine)
