import pymongo

client = pymongo.MongoClient(host="127.0.0.1", port=27017, username="app", password="m0ng0Local")
store = client["webapp"]["sessions"]
store.find_one({"session_token": "abc"})
