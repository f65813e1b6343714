##### START OF FILE ######
# models.py - ORM records of the sweep result store

from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String
from sqlalchemy.orm import declarative_base

Base = declarative_base()


class SweepRecord(Base):
    """One computed row of the count-vs-dimension sweep"""
    __tablename__ = 'sweep_rows'
    k1 = Column(Integer, primary_key=True)
    k2 = Column(Integer, primary_key=True)
    k3 = Column(Integer, primary_key=True)
    k4 = Column(Integer, primary_key=True)
    # sha256 of the inequality table the count was computed against
    table_digest = Column(String(64), nullable=False, index=True)
    count = Column(Integer, nullable=False)
    weyl = Column(Integer, nullable=False)
    equal = Column(Boolean, nullable=False)
    elapsed_ms = Column(Float, nullable=False, default=0.0)
    computed_at = Column(DateTime, nullable=False, default=datetime.utcnow)

    @property
    def k(self):
        return (self.k1, self.k2, self.k3, self.k4)

    def __repr__(self) -> str:
        return f"<SweepRecord k={self.k} count={self.count} weyl={self.weyl}>"
###### END OF FILE ########
