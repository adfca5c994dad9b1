from app import db


class Transfer(db.Model):
    __tablename__ = "transfers"
    id = db.Column(db.Integer, primary_key=True)
    card_number = db.Column(db.String(19))
    amount = db.Column(db.Numeric)
